#include <doctest.h>

#include <stdexcept>

#include "verum/assign.hpp"
#include "verum/bidder.hpp"
#include "verum/clinch.hpp"
#include "verum/harness.hpp"
#include "verum/oracle.hpp"
#include "verum/rng.hpp"
#include "verum/sharing.hpp"

using namespace verum;

namespace {

// A's channels strictly contain B's; they conflict. The engines and oracles
// disagree here in an instructive way, so several tests reuse it.
struct NestedPair {
  ConflictGraph g{2, 2};
  BidderProfiles p;
  AuctionConfig cfg{2, 1};

  NestedPair() {
    g.add_edge(0, 1);
    sort_adjacency(g);
    g.avail = {0b11, 0b01};
    p.valuations = {{10, 9}, {12, 6}};
  }
};

Money engine_welfare(const BidderProfiles& p, const std::vector<int>& counts) {
  Money w = 0;
  for (int i = 0; i < p.size(); ++i)
    w += value_of_count(p.of(i), counts[static_cast<std::size_t>(i)]);
  return w;
}

}  // namespace

TEST_CASE("revenue oracle prices an isolated bidder at the reserve") {
  ConflictGraph g(1, 2);
  g.avail = {0b11};
  BidderProfiles p;
  p.valuations = {{30, 25}};
  OracleResult r = optimal_revenue_exclusive(g, p, AuctionConfig{10, 1});
  CHECK(r.best_value == 20);  // two units, both clear at the reserve of 10
  CHECK(r.best_counts == std::vector<int>{2});
  CHECK(r.enumerated > 0);
  CHECK_NOTHROW(validate_assignment(g, r.best_counts, r.best_assignment, AssignMode::Exclusive));
}

TEST_CASE("revenue oracle on a two-bidder clique sells to the stronger bidder") {
  ConflictGraph g(2, 1);
  g.add_edge(0, 1);
  sort_adjacency(g);
  g.avail = {0b1, 0b1};
  BidderProfiles p;
  p.valuations = {{10}, {7}};
  OracleResult r = optimal_revenue_exclusive(g, p, AuctionConfig{1, 1});
  // A's unit crosses when B's demand dies at p = 7; B's own crossing at 10
  // exceeds its value, so B can never buy.
  CHECK(r.best_value == 7);
  CHECK(r.best_counts == std::vector<int>{1, 0});
}

TEST_CASE("the engine can fall short of the revenue oracle but never beats it") {
  NestedPair np;
  OracleResult r = optimal_revenue_exclusive(np.g, np.p, np.cfg);
  // Oracle: A takes one unit at its first crossing (2), B takes its channel
  // at 10 once A's demand is gone.
  CHECK(r.best_value == 12);
  CHECK(r.best_counts == std::vector<int>{1, 1});

  Outcome o = run_exclusive_auction(np.g, np.p, np.cfg);
  CHECK(o.revenue == 8);  // both of A's units; B is locked out of channel 0
  CHECK(o.revenue <= r.best_value);
}

TEST_CASE("engine revenue is bounded by the oracle across random instances") {
  SmallInstanceSpec spec;
  spec.max_n = 8;
  for (int t = 0; t < 80; ++t) {
    Instance inst = random_small_instance(spec, derive_seed(1000, t));
    AuctionConfig cfg{t % 4, 1};
    Outcome o = run_exclusive_auction(inst.graph, inst.profiles, cfg);
    OracleResult r = optimal_revenue_exclusive(inst.graph, inst.profiles, cfg);
    CHECK(o.revenue <= r.best_value);
    CHECK_NOTHROW(
        validate_assignment(inst.graph, r.best_counts, r.best_assignment, AssignMode::Exclusive));
  }
}

TEST_CASE("welfare oracle picks the independent set with the best total value") {
  ConflictGraph g(3, 1);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  sort_adjacency(g);
  g.avail = {0b1, 0b1, 0b1};
  BidderProfiles p;
  p.valuations = {{5}, {9}, {6}};
  OracleResult r = optimal_welfare(g, p);
  CHECK(r.best_value == 11);  // the two path ends beat the middle
  CHECK(r.best_counts == std::vector<int>{1, 0, 1});

  ConflictGraph lone(1, 2);
  lone.avail = {0b11};
  BidderProfiles q;
  q.valuations = {{30, 25}};
  OracleResult s = optimal_welfare(lone, q);
  CHECK(s.best_value == 55);
  CHECK(s.best_counts == std::vector<int>{2});
}

TEST_CASE("engine welfare is bounded by the welfare oracle") {
  SmallInstanceSpec spec;
  spec.max_n = 7;
  for (int t = 0; t < 60; ++t) {
    Instance inst = random_small_instance(spec, derive_seed(1100, t));
    Outcome o = run_exclusive_auction(inst.graph, inst.profiles, AuctionConfig{1, 1});
    OracleResult r = optimal_welfare(inst.graph, inst.profiles);
    CHECK(engine_welfare(inst.profiles, o.counts) <= r.best_value);
  }
}

TEST_CASE("full-band fractions make the sharing oracle equal the exclusive one") {
  SmallInstanceSpec spec;
  spec.max_n = 7;
  for (int t = 0; t < 30; ++t) {
    Instance inst = random_small_instance(spec, derive_seed(1200, t));
    AuctionConfig cfg{t % 3, 1};
    SharingParams sp = *inst.sharing;
    sp.bandwidth_bp.assign(static_cast<std::size_t>(inst.graph.n), 10000);
    OracleResult ex = optimal_revenue_exclusive(inst.graph, inst.profiles, cfg);
    OracleResult sh = optimal_revenue_sharing(inst.graph, inst.profiles, cfg, sp, inst.nodes);
    CHECK(sh.best_value == ex.best_value);
    CHECK(sh.best_counts == ex.best_counts);
  }
}

TEST_CASE("sharing oracle can seat conflicting bidders on one channel") {
  NestedPair np;
  std::vector<Node> nodes = {{0, 0.0, 0.0}, {1, 10.0, 0.0}};
  SharingParams sp;
  sp.bandwidth_bp = {4000, 4000};
  sp.model.tau_kelvin = 1e9;

  OracleResult sh = optimal_revenue_sharing(np.g, np.p, np.cfg, sp, nodes);
  // A sells both units (crossings 2 and 6) and B shares channel 0 at its
  // crossing of 10; every price is scaled by the 0.4 bandwidth fraction.
  Money expect = shared_price(2, 4000) + shared_price(6, 4000) + shared_price(10, 4000);
  CHECK(sh.best_value == expect);  // 1 + 2 + 4
  CHECK(sh.best_counts == std::vector<int>{2, 1});
  CHECK_NOTHROW(
      validate_assignment(np.g, sh.best_counts, sh.best_assignment, AssignMode::Sharing, &sp,
                          &nodes));
}

TEST_CASE("oracles refuse instances too large to enumerate") {
  ConflictGraph g(11, 1);
  g.avail.assign(11, 0b1);
  BidderProfiles p;
  p.valuations.assign(11, {3});
  CHECK_THROWS_AS(optimal_revenue_exclusive(g, p, AuctionConfig{1, 1}), std::runtime_error);
  CHECK_THROWS_AS(optimal_welfare(g, p), std::runtime_error);
  SharingParams sp;
  sp.bandwidth_bp.assign(11, 5000);
  std::vector<Node> nodes(11);
  for (int i = 0; i < 11; ++i) nodes[static_cast<std::size_t>(i)] = {i, double(i), 0.0};
  CHECK_THROWS_AS(optimal_revenue_sharing(g, p, AuctionConfig{1, 1}, sp, nodes),
                  std::runtime_error);
}

TEST_CASE("clique reference reproduces the classical multi-unit Vickrey outcome") {
  BidderProfiles p;
  p.valuations = {{10, 8}, {9}, {7}};
  VickreyOutcome v = vickrey_clique_reference(p, 2, 5);
  CHECK(v.counts == std::vector<int>{1, 1, 0});
  CHECK(v.payments == std::vector<Money>{7, 8, 0});

  // The engine agrees with it on the corresponding homogeneous clique.
  ConflictGraph g(3, 2);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  sort_adjacency(g);
  g.avail = {0b11, 0b11, 0b11};
  Outcome o = run_exclusive_auction(g, p, AuctionConfig{5, 1});
  CHECK(o.counts == v.counts);
  CHECK(o.payments == v.payments);
}

TEST_CASE("reserve bids keep weak demand out of the clique reference") {
  BidderProfiles p;
  p.valuations = {{4}, {3}};
  VickreyOutcome v = vickrey_clique_reference(p, 2, 5);
  CHECK(v.counts == std::vector<int>{0, 0});
  CHECK(v.payments == std::vector<Money>{0, 0});
}

TEST_CASE("deviation search finds truthful bidding already optimal on a clique") {
  ConflictGraph g(2, 1);
  g.add_edge(0, 1);
  sort_adjacency(g);
  g.avail = {0b1, 0b1};
  BidderProfiles p;
  p.valuations = {{10}, {7}};
  AuctionConfig cfg{1, 1};

  DeviationReport a = enumerate_deviations(g, p, cfg, 0, 12);
  CHECK(a.truthful_utility == 3);  // wins at 7, the price where B's demand dies
  CHECK(a.best_utility == 3);
  CHECK(a.tried > 0);

  DeviationReport b = enumerate_deviations(g, p, cfg, 1, 12);
  CHECK(b.truthful_utility == 0);
  CHECK(b.best_utility == 0);  // buying at A's crossing of 10 would cost 3
}

TEST_CASE("deviation search on a worthless bidder stays at zero") {
  ConflictGraph g(1, 2);
  g.avail = {0b11};
  BidderProfiles p;
  p.valuations = {{0, 0}};
  DeviationReport r = enumerate_deviations(g, p, AuctionConfig{1, 1}, 0, 6);
  CHECK(r.truthful_utility == 0);
  CHECK(r.best_utility == 0);  // any purchase costs at least the reserve
}

TEST_CASE("deviation search guards its report grid") {
  ConflictGraph g(1, 2);
  g.avail = {0b11};
  BidderProfiles p;
  p.valuations = {{5, 4}};
  CHECK_THROWS_AS(enumerate_deviations(g, p, AuctionConfig{1, 1}, 0, 10000),
                  std::runtime_error);
  CHECK_THROWS_AS(enumerate_deviations(g, p, AuctionConfig{1, 1}, 7, 12),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_deviations(g, p, AuctionConfig{1, 1}, -1, 12),
                  std::invalid_argument);
}
