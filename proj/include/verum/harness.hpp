#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "verum/clinch.hpp"
#include "verum/types.hpp"

namespace verum {

// Sealed-bid greedy baseline: bidders ordered by highest marginal valuation
// (ties: lower id) each take as much of their demand as fits without
// conflicts, paying their own bid for every channel received (first price).
// Known to be manipulable; present for comparison curves only.
Outcome greedy_baseline(const ConflictGraph& g, const BidderProfiles& profiles);

// ---------------------------------------------------------------------------
// Parameter sweeps

struct SweepSpec {
  std::string parameter;        // n | interference_range | avg_demand_pct |
                                // reserve_price | step_size | tau | third_party_fraction | C
  std::vector<double> values;
  int replicates = 10;
  std::vector<std::string> mechanisms;  // verum-exclusive | verum-sharing | greedy-baseline | oracle
  std::uint64_t master_seed = 1;
  ScenarioConfig base;
  AuctionConfig auction;
  bool measure_wall_ms = true;  // false: report 0.000 so output is byte-reproducible
};

struct MetricsRow {
  std::string scenario_id;
  std::string mechanism;
  int n = 0;
  int C = 0;
  double avg_demand_pct = 0;
  double interference_range_m = 0;
  Money reserve_price = 0;
  Money step_size = 0;
  double tau = 0;
  Money revenue = 0;
  double utilization_pct = 0;
  double winner_pct = 0;
  int rounds = 0;
  double wall_ms = 0;
  std::uint64_t seed = 0;
  bool failed = false;          // oracle guard tripped etc.; metric cells print NA
};

extern const char* const kCsvHeader;

// Runs every (value, replicate, mechanism) cell. Each replicate draws its
// scenario from a stream seeded by (master_seed, point index, replicate
// index); all mechanisms of a cell share that instance. Rows come back in
// deterministic order regardless of `threads`. A failing cell (e.g. the
// oracle size guard) is recorded, not fatal.
std::vector<MetricsRow> run_sweep(const SweepSpec& spec, int threads = 1);

std::string rows_to_csv(const std::vector<MetricsRow>& rows);

SweepSpec read_sweep_spec(std::istream& in);
SweepSpec read_sweep_spec_file(const std::string& path);

// ---------------------------------------------------------------------------
// Randomized verification suites (shared by the verify CLI and the
// acceptance tests)

struct SmallInstanceSpec {
  int min_n = 2, max_n = 6;
  int max_channels = 4;
  int max_demand = 3;           // 0 = only x_i-capped
  Money value_min = 1, value_max = 12;
  bool distinct_values = false; // sample valuations without replacement
  bool clique = false;          // else G(n, p=0.45)
  bool homogeneous = false;     // all channels available everywhere
  double edge_prob = 0.45;
  double avail_prob = 0.75;
};

Instance random_small_instance(const SmallInstanceSpec& spec, std::uint64_t seed);

struct SuiteReport {
  std::string name;
  int instances = 0;
  int violations = 0;
  bool pass = false;
  double stat = 0;              // suite-specific scalar (e.g. mean gap percentage)
  std::string detail;           // free-form summary line(s)
};

SuiteReport truthfulness_suite(int instances, std::uint64_t seed);
SuiteReport efficiency_suite(int instances, std::uint64_t seed);
SuiteReport vickrey_equivalence_suite(int instances, std::uint64_t seed);
SuiteReport revenue_bound_suite(int instances, std::uint64_t seed);
SuiteReport sharing_dominance_suite(int instances, std::uint64_t seed);

}  // namespace verum
