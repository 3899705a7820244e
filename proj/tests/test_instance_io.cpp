#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "verum/clinch.hpp"
#include "verum/harness.hpp"
#include "verum/instance_io.hpp"
#include "verum/oracle.hpp"
#include "verum/rng.hpp"

using namespace verum;

namespace {

Instance reread(const Instance& inst) {
  std::istringstream in(io::write_instance(inst));
  return io::read_instance(in);
}

}  // namespace

TEST_CASE("instances survive a write/read round trip unchanged") {
  SmallInstanceSpec spec;
  spec.max_n = 8;
  for (int t = 0; t < 25; ++t) {
    Instance inst = random_small_instance(spec, derive_seed(1500, t));
    Instance back = reread(inst);

    CHECK(back.seed == inst.seed);
    CHECK(back.graph.n == inst.graph.n);
    CHECK(back.graph.channels == inst.graph.channels);
    CHECK(back.graph.avail == inst.graph.avail);
    CHECK(back.graph.adj == inst.graph.adj);
    CHECK(back.profiles.valuations == inst.profiles.valuations);
    REQUIRE(back.nodes.size() == inst.nodes.size());
    for (std::size_t i = 0; i < inst.nodes.size(); ++i) {
      CHECK(back.nodes[i].id == inst.nodes[i].id);
      CHECK(back.nodes[i].x == doctest::Approx(inst.nodes[i].x));
      CHECK(back.nodes[i].y == doctest::Approx(inst.nodes[i].y));
    }
    REQUIRE(back.sharing.has_value() == inst.sharing.has_value());
    if (inst.sharing) {
      CHECK(back.sharing->bandwidth_bp == inst.sharing->bandwidth_bp);
      CHECK(back.sharing->model.tau_kelvin == doctest::Approx(inst.sharing->model.tau_kelvin));
    }

    // The writer is canonical: a second pass reproduces the bytes exactly.
    CHECK(io::write_instance(back) == io::write_instance(inst));
  }
}

TEST_CASE("scenario configs survive a write/read round trip") {
  ScenarioConfig cfg;
  cfg.n = 321;
  cfg.density_profile = "urban";
  cfg.interference_range = 48.25;
  cfg.C = 14;
  cfg.third_party_fraction = 0.25;
  cfg.avg_demand_pct = 33.5;
  cfg.valuation_min = 3;
  cfg.valuation_max = 77;
  cfg.rng_seed = 123456789;
  cfg.sharing_enabled = true;
  cfg.sharing_b_min_bp = 1500;
  cfg.sharing_b_max_bp = 7000;
  cfg.sharing_model.tau_kelvin = 987.5;

  std::istringstream in(io::write_scenario_config(cfg));
  ScenarioConfig back = io::read_scenario_config(in);
  CHECK(back.n == cfg.n);
  CHECK(back.density_profile == cfg.density_profile);
  CHECK(back.interference_range == doctest::Approx(cfg.interference_range));
  CHECK(back.C == cfg.C);
  CHECK(back.third_party_fraction == doctest::Approx(cfg.third_party_fraction));
  CHECK(back.avg_demand_pct == doctest::Approx(cfg.avg_demand_pct));
  CHECK(back.valuation_min == cfg.valuation_min);
  CHECK(back.valuation_max == cfg.valuation_max);
  CHECK(back.rng_seed == cfg.rng_seed);
  CHECK(back.sharing_enabled == cfg.sharing_enabled);
  CHECK(back.sharing_b_min_bp == cfg.sharing_b_min_bp);
  CHECK(back.sharing_b_max_bp == cfg.sharing_b_max_bp);
  CHECK(back.sharing_model.tau_kelvin == doctest::Approx(cfg.sharing_model.tau_kelvin));
}

TEST_CASE("apply_scenario_key distinguishes foreign keys from bad values") {
  ScenarioConfig cfg;
  CHECK(io::apply_scenario_key(cfg, "n", "55"));
  CHECK(cfg.n == 55);
  CHECK(io::apply_scenario_key(cfg, "valuation_range", "2 9"));
  CHECK(cfg.valuation_min == 2);
  CHECK(cfg.valuation_max == 9);
  CHECK_FALSE(io::apply_scenario_key(cfg, "not_a_field", "1"));
  CHECK_THROWS_AS(io::apply_scenario_key(cfg, "n", "elephant"), std::runtime_error);
  CHECK_THROWS_AS(io::apply_scenario_key(cfg, "valuation_range", "7"), std::runtime_error);
}

TEST_CASE("malformed instance files fail loudly") {
  SmallInstanceSpec spec;
  Instance inst = random_small_instance(spec, 77);
  std::string text = io::write_instance(inst);

  SUBCASE("wrong magic line") {
    std::istringstream in("some-other-format 3\n" + text);
    CHECK_THROWS_AS(io::read_instance(in), std::runtime_error);
  }
  SUBCASE("truncated body") {
    std::istringstream in(text.substr(0, text.size() / 2));
    CHECK_THROWS_AS(io::read_instance(in), std::runtime_error);
  }
  SUBCASE("availability bitstring with the wrong length") {
    std::string bad = text;
    const std::string header = "availability\n";
    auto pos = bad.find(header);
    REQUIRE(pos != std::string::npos);
    bad.insert(bad.find('\n', pos + header.size()), "0");  // one extra channel bit
    std::istringstream in(bad);
    CHECK_THROWS_AS(io::read_instance(in), std::runtime_error);
  }
}

TEST_CASE("result and oracle reports carry their format tags and content") {
  SmallInstanceSpec spec;
  Instance inst = random_small_instance(spec, 99);
  AuctionConfig cfg{1, 1};
  Outcome o = run_exclusive_auction(inst.graph, inst.profiles, cfg);
  std::string result = io::write_result(inst, o, "verum-exclusive");
  CHECK(result.rfind("verum-result 1", 0) == 0);
  CHECK(result.find("verum-exclusive") != std::string::npos);

  OracleResult r = optimal_revenue_exclusive(inst.graph, inst.profiles, cfg);
  std::string oracle = io::write_oracle_result(inst, r, "revenue-exclusive");
  CHECK(oracle.rfind("verum-oracle-result 1", 0) == 0);
  CHECK(oracle.find("revenue-exclusive") != std::string::npos);
}
