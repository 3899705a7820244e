#include <doctest.h>

#include <stdexcept>

#include "verum/assign.hpp"
#include "verum/bidder.hpp"
#include "verum/clinch.hpp"
#include "verum/harness.hpp"
#include "verum/rng.hpp"
#include "verum/sharing.hpp"

using namespace verum;

TEST_CASE("pick_fresh_channel walks the free channels rarest-first") {
  SUBCASE("isolated bidder just takes its channels in index order") {
    ConflictGraph g(1, 3);
    g.avail = {0b011};
    std::vector<ChannelMask> held = {0};
    CHECK(pick_fresh_channel(g, held, 0) == 0);
    held[0] |= 0b001;
    CHECK(pick_fresh_channel(g, held, 0) == 1);
    held[0] |= 0b010;
    CHECK(pick_fresh_channel(g, held, 0) == -1);  // channel 2 is unavailable
  }

  SUBCASE("prefers the channel fewer neighbors could use") {
    ConflictGraph g(2, 2);
    g.add_edge(0, 1);
    sort_adjacency(g);
    g.avail = {0b11, 0b10};  // neighbor only sees channel 1
    std::vector<ChannelMask> held = {0, 0};
    CHECK(pick_fresh_channel(g, held, 0) == 0);  // contested by nobody
  }

  SUBCASE("never lands on a channel a conflict neighbor holds") {
    ConflictGraph g(2, 2);
    g.add_edge(0, 1);
    sort_adjacency(g);
    g.avail = {0b11, 0b11};
    std::vector<ChannelMask> held = {0, 0b01};
    CHECK(pick_fresh_channel(g, held, 0) == 1);
    held[0] |= 0b10;
    CHECK(pick_fresh_channel(g, held, 0) == -1);
  }
}

TEST_CASE("greedy_assign places an isolated winner on its own channels") {
  ConflictGraph g(1, 3);
  g.avail = {0b011};
  Assignment a = greedy_assign(g, {2}, {10}, AssignMode::Exclusive);
  CHECK(a.masks == std::vector<ChannelMask>{0b011});
  CHECK(a.count(0) == 2);
  CHECK(a.uses(0, 0));
  CHECK(a.uses(0, 1));
  CHECK_FALSE(a.uses(0, 2));
}

TEST_CASE("greedy_assign realizes the worked five-bidder outcome") {
  ConflictGraph g(5, 4);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  sort_adjacency(g);
  g.avail = {0b0011, 0b1100, 0b0111, 0b1100, 0b1100};

  std::vector<int> counts = {0, 1, 2, 0, 2};
  std::vector<Money> payments = {0, 13, 25, 0, 14};
  Assignment a = greedy_assign(g, counts, payments, AssignMode::Exclusive);
  CHECK_NOTHROW(validate_assignment(g, counts, a, AssignMode::Exclusive));
  for (int i = 0; i < g.n; ++i) CHECK(a.count(i) == counts[static_cast<std::size_t>(i)]);
}

TEST_CASE("greedy_assign is deterministic") {
  SmallInstanceSpec spec;
  spec.max_n = 8;
  for (int t = 0; t < 30; ++t) {
    Instance inst = random_small_instance(spec, derive_seed(900, t));
    Outcome o = run_exclusive_auction(inst.graph, inst.profiles, AuctionConfig{1, 1});
    Assignment a = greedy_assign(inst.graph, o.counts, o.payments, AssignMode::Exclusive);
    Assignment b = greedy_assign(inst.graph, o.counts, o.payments, AssignMode::Exclusive);
    CHECK(a.masks == b.masks);
  }
}

TEST_CASE("global fallback untangles a greedy dead end") {
  // Hub i sees {0,1}; spoke j1 only {0}, spoke j2 only {1}. The hub places
  // first (highest payment) and in isolation would take channel 0 (tie ->
  // lowest index), starving j1. The cross-winner search must hand the hub
  // channel 1 instead.
  ConflictGraph g(3, 2);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  sort_adjacency(g);
  g.avail = {0b11, 0b01, 0b10};

  std::vector<int> counts = {1, 1, 0};
  std::vector<Money> payments = {20, 5, 0};
  Assignment a = greedy_assign(g, counts, payments, AssignMode::Exclusive);
  CHECK(a.masks == std::vector<ChannelMask>{0b10, 0b01, 0b00});
  CHECK_NOTHROW(validate_assignment(g, counts, a, AssignMode::Exclusive));
}

TEST_CASE("greedy_assign rejects impossible requests") {
  SUBCASE("two adjacent winners, one channel") {
    ConflictGraph g(2, 1);
    g.add_edge(0, 1);
    sort_adjacency(g);
    g.avail = {0b1, 0b1};
    CHECK_THROWS_AS(greedy_assign(g, {1, 1}, {5, 5}, AssignMode::Exclusive),
                    std::runtime_error);
  }
  SUBCASE("count above the bidder's own availability") {
    ConflictGraph g(1, 2);
    g.avail = {0b01};
    CHECK_THROWS_AS(greedy_assign(g, {2}, {5}, AssignMode::Exclusive), std::runtime_error);
  }
  SUBCASE("sharing mode demands the sharing parameters") {
    ConflictGraph g(1, 1);
    g.avail = {0b1};
    CHECK_THROWS_AS(greedy_assign(g, {1}, {5}, AssignMode::Sharing), std::invalid_argument);
  }
}

TEST_CASE("sharing mode can seat two conflicting winners on one channel") {
  ConflictGraph g(2, 1);
  g.add_edge(0, 1);
  sort_adjacency(g);
  g.avail = {0b1, 0b1};
  std::vector<Node> nodes = {{0, 0.0, 0.0}, {1, 100.0, 0.0}};
  SharingParams sp;
  sp.bandwidth_bp = {4000, 4000};
  sp.model.tau_kelvin = 1e9;

  std::vector<int> counts = {1, 1};
  std::vector<Money> payments = {4, 3};
  CHECK_THROWS_AS(greedy_assign(g, counts, payments, AssignMode::Exclusive),
                  std::runtime_error);

  Assignment a = greedy_assign(g, counts, payments, AssignMode::Sharing, &sp, &nodes);
  CHECK(a.masks == std::vector<ChannelMask>{0b1, 0b1});
  CHECK_NOTHROW(validate_assignment(g, counts, a, AssignMode::Sharing, &sp, &nodes));
  CHECK_THROWS_AS(validate_assignment(g, counts, a, AssignMode::Exclusive),
                  std::runtime_error);
}

TEST_CASE("validate_assignment flags every class of defect") {
  ConflictGraph g(2, 2);
  g.add_edge(0, 1);
  sort_adjacency(g);
  g.avail = {0b11, 0b01};

  Assignment ok;
  ok.masks = {0b10, 0b01};
  CHECK_NOTHROW(validate_assignment(g, {1, 1}, ok, AssignMode::Exclusive));

  SUBCASE("mask population must match the awarded count") {
    CHECK_THROWS_AS(validate_assignment(g, {2, 1}, ok, AssignMode::Exclusive),
                    std::runtime_error);
  }
  SUBCASE("channels outside the bidder's availability are rejected") {
    Assignment bad;
    bad.masks = {0b10, 0b10};  // bidder 1 cannot see channel 1
    CHECK_THROWS_AS(validate_assignment(g, {1, 1}, bad, AssignMode::Exclusive),
                    std::runtime_error);
  }
  SUBCASE("conflicting co-channel use is rejected in exclusive mode") {
    Assignment bad;
    bad.masks = {0b01, 0b01};
    CHECK_THROWS_AS(validate_assignment(g, {1, 1}, bad, AssignMode::Exclusive),
                    std::runtime_error);
  }
}

TEST_CASE("engine outcomes always validate, across many random instances") {
  SmallInstanceSpec spec;
  spec.max_n = 8;
  for (int t = 0; t < 60; ++t) {
    Instance inst = random_small_instance(spec, derive_seed(950, t));
    Outcome o = run_exclusive_auction(inst.graph, inst.profiles, AuctionConfig{t % 4, 1});
    CHECK_NOTHROW(
        validate_assignment(inst.graph, o.counts, o.assignment, AssignMode::Exclusive));
  }
}
