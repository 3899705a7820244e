#include "verum/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "verum/assign.hpp"
#include "verum/bidder.hpp"
#include "verum/instance_io.hpp"
#include "verum/metrics.hpp"
#include "verum/oracle.hpp"
#include "verum/rng.hpp"
#include "verum/scenario.hpp"
#include "verum/sharing.hpp"

namespace verum {

Outcome greedy_baseline(const ConflictGraph& g, const BidderProfiles& profiles) {
  if (profiles.size() != g.n) throw std::invalid_argument("baseline: profile/graph size mismatch");

  std::vector<int> order;
  for (int i = 0; i < g.n; ++i)
    if (!profiles.of(i).empty()) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    Money va = profiles.of(a)[0], vb = profiles.of(b)[0];
    if (va != vb) return va > vb;
    return a < b;
  });

  Outcome out;
  out.counts.assign(static_cast<std::size_t>(g.n), 0);
  out.payments.assign(static_cast<std::size_t>(g.n), 0);
  out.assignment.masks.assign(static_cast<std::size_t>(g.n), 0);
  out.rounds = 1;

  for (int i : order) {
    const auto iu = static_cast<std::size_t>(i);
    int want = std::min<int>(static_cast<int>(profiles.of(i).size()), g.available_count(i));
    for (int unit = 0; unit < want; ++unit) {
      int best = -1, best_metric = 0;
      for (int k = 0; k < g.channels; ++k) {
        if (!g.available(i, k) || out.assignment.uses(i, k)) continue;
        bool blocked = false;
        for (int j : g.neighbors(i))
          if (out.assignment.uses(j, k)) {
            blocked = true;
            break;
          }
        if (blocked) continue;
        int metric = 0;
        for (int j : g.neighbors(i))
          if (g.available(j, k)) ++metric;
        if (best == -1 || metric < best_metric) best = k, best_metric = metric;
      }
      if (best < 0) break;  // heuristic: the bidder simply gets fewer channels
      out.assignment.masks[iu] |= ChannelMask{1} << best;
      Money price = profiles.of(i)[static_cast<std::size_t>(unit)];  // first price: own bid
      out.counts[iu] += 1;
      out.payments[iu] += price;
      out.ledger.push_back({i, 1, price});
    }
  }
  for (Money s : out.payments) out.revenue += s;
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

const char* const kCsvHeader =
    "scenario_id,mechanism,n,C,avg_demand_pct,interference_range_m,reserve_price,step_size,tau,"
    "revenue,utilization_pct,winner_pct,rounds,wall_ms,seed";

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("sweep: failed to format a double");
  return std::string(buf, ptr);
}

std::string fmt_ms(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void apply_sweep_value(const std::string& parameter, double value, ScenarioConfig& cfg,
                       AuctionConfig& auction) {
  if (parameter == "n") cfg.n = static_cast<int>(value);
  else if (parameter == "C") cfg.C = static_cast<int>(value);
  else if (parameter == "interference_range") cfg.interference_range = value;
  else if (parameter == "avg_demand_pct") cfg.avg_demand_pct = value;
  else if (parameter == "third_party_fraction") cfg.third_party_fraction = value;
  else if (parameter == "reserve_price") auction.reserve_price = static_cast<Money>(value);
  else if (parameter == "step_size") auction.step_size = static_cast<Money>(value);
  else if (parameter == "tau") cfg.sharing_model.tau_kelvin = value;
  else throw std::invalid_argument("sweep: unknown parameter '" + parameter + "'");
}

struct CellResult {
  std::vector<MetricsRow> rows;
};

MetricsRow base_row(const std::string& scenario_id, const std::string& mechanism,
                    const ScenarioConfig& cfg, const AuctionConfig& auction,
                    std::uint64_t seed) {
  MetricsRow row;
  row.scenario_id = scenario_id;
  row.mechanism = mechanism;
  row.n = cfg.n;
  row.C = cfg.C;
  row.avg_demand_pct = cfg.avg_demand_pct;
  row.interference_range_m = cfg.interference_range;
  row.reserve_price = auction.reserve_price;
  row.step_size = auction.step_size;
  row.tau = cfg.sharing_model.tau_kelvin;
  row.seed = seed;
  return row;
}

CellResult run_cell(const SweepSpec& spec, int point, int replicate) {
  std::uint64_t seed = derive_seed(spec.master_seed, static_cast<std::uint64_t>(point),
                                   static_cast<std::uint64_t>(replicate));
  ScenarioConfig cfg = spec.base;
  AuctionConfig auction = spec.auction;
  apply_sweep_value(spec.parameter, spec.values[static_cast<std::size_t>(point)], cfg, auction);
  cfg.rng_seed = seed;
  for (const std::string& m : spec.mechanisms)
    if (m == "verum-sharing") cfg.sharing_enabled = true;

  std::string scenario_id = spec.parameter + "=" +
                            fmt_double(spec.values[static_cast<std::size_t>(point)]) + "/r" +
                            std::to_string(replicate);

  CellResult cell;
  bool have_instance = true;
  Instance inst;
  try {
    inst = generate_instance(cfg);
  } catch (const std::exception&) {
    have_instance = false;
  }

  int bidders = have_instance ? count_bidders(inst.graph, inst.profiles) : 0;

  for (const std::string& mechanism : spec.mechanisms) {
    MetricsRow row = base_row(scenario_id, mechanism, cfg, auction, seed);
    if (!have_instance) {
      row.failed = true;
      cell.rows.push_back(row);
      continue;
    }
    try {
      auto started = std::chrono::steady_clock::now();
      Outcome outcome;
      if (mechanism == "verum-exclusive") {
        outcome = run_exclusive_auction(inst.graph, inst.profiles, auction);
      } else if (mechanism == "verum-sharing") {
        outcome =
            run_sharing_auction(inst.graph, inst.profiles, auction, *inst.sharing, inst.nodes);
      } else if (mechanism == "greedy-baseline") {
        outcome = greedy_baseline(inst.graph, inst.profiles);
      } else if (mechanism == "oracle") {
        OracleResult oracle = optimal_revenue_exclusive(inst.graph, inst.profiles, auction);
        outcome.counts = oracle.best_counts;
        outcome.assignment = oracle.best_assignment;
        outcome.revenue = oracle.best_value;
        outcome.rounds = 0;
      } else {
        throw std::invalid_argument("sweep: unknown mechanism '" + mechanism + "'");
      }
      auto finished = std::chrono::steady_clock::now();
      row.revenue = outcome.revenue;
      row.utilization_pct = spectrum_utilization(inst.graph, outcome.assignment);
      row.winner_pct = winner_percentage(outcome.counts, bidders);
      row.rounds = outcome.rounds;
      row.wall_ms =
          spec.measure_wall_ms
              ? std::chrono::duration<double, std::milli>(finished - started).count()
              : 0.0;
    } catch (const std::exception&) {
      row.failed = true;  // e.g. the oracle size guard at sweep scale
    }
    cell.rows.push_back(row);
  }
  return cell;
}

}  // namespace

std::vector<MetricsRow> run_sweep(const SweepSpec& spec, int threads) {
  if (spec.values.empty()) throw std::invalid_argument("sweep: no values to sweep");
  if (spec.replicates < 1) throw std::invalid_argument("sweep: replicates must be >= 1");
  if (spec.mechanisms.empty()) throw std::invalid_argument("sweep: no mechanisms");

  const int points = static_cast<int>(spec.values.size());
  const int cells = points * spec.replicates;
  std::vector<CellResult> results(static_cast<std::size_t>(cells));

  auto job = [&](int cell) {
    int point = cell / spec.replicates;
    int replicate = cell % spec.replicates;
    results[static_cast<std::size_t>(cell)] = run_cell(spec, point, replicate);
  };

  if (threads <= 1) {
    for (int c = 0; c < cells; ++c) job(c);
  } else {
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (int c = next.fetch_add(1); c < cells; c = next.fetch_add(1)) job(c);
    };
    std::vector<std::thread> pool;
    int count = std::min(threads, cells);
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<MetricsRow> rows;
  rows.reserve(static_cast<std::size_t>(cells) * spec.mechanisms.size());
  for (const CellResult& cell : results)
    for (const MetricsRow& row : cell.rows) rows.push_back(row);
  return rows;
}

std::string rows_to_csv(const std::vector<MetricsRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const MetricsRow& r : rows) {
    out << r.scenario_id << "," << r.mechanism << "," << r.n << "," << r.C << ","
        << fmt_double(r.avg_demand_pct) << "," << fmt_double(r.interference_range_m) << ","
        << r.reserve_price << "," << r.step_size << "," << fmt_double(r.tau) << ",";
    if (r.failed) {
      out << "NA,NA,NA,NA,NA";
    } else {
      out << r.revenue << "," << fmt_double(r.utilization_pct) << ","
          << fmt_double(r.winner_pct) << "," << r.rounds << "," << fmt_ms(r.wall_ms);
    }
    out << "," << r.seed << "\n";
  }
  return out.str();
}

SweepSpec read_sweep_spec(std::istream& in) {
  SweepSpec spec;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("sweep spec: " + what + " (line " + std::to_string(line_no) + ")");
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string& s) {
      std::size_t a = s.find_first_not_of(" \t\r");
      std::size_t b = s.find_last_not_of(" \t\r");
      s = (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
    };
    trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    trim(key);
    trim(value);

    std::istringstream ss(value);
    if (key == "parameter") {
      spec.parameter = value;
    } else if (key == "values") {
      double v;
      while (ss >> v) spec.values.push_back(v);
      if (spec.values.empty()) fail("values list is empty");
    } else if (key == "replicates") {
      if (!(ss >> spec.replicates)) fail("bad replicates");
    } else if (key == "mechanisms") {
      std::string m;
      while (ss >> m) spec.mechanisms.push_back(m);
    } else if (key == "master_seed") {
      if (!(ss >> spec.master_seed)) fail("bad master_seed");
    } else if (key == "measure_wall_ms") {
      int flag;
      if (!(ss >> flag)) fail("bad measure_wall_ms");
      spec.measure_wall_ms = flag != 0;
    } else if (key == "reserve_price") {
      if (!(ss >> spec.auction.reserve_price)) fail("bad reserve_price");
    } else if (key == "step_size") {
      if (!(ss >> spec.auction.step_size)) fail("bad step_size");
    } else if (io::apply_scenario_key(spec.base, key, value)) {
      // base scenario field
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (spec.parameter.empty()) throw std::runtime_error("sweep spec: missing parameter");
  if (spec.values.empty()) throw std::runtime_error("sweep spec: missing values");
  if (spec.mechanisms.empty()) throw std::runtime_error("sweep spec: missing mechanisms");
  return spec;
}

SweepSpec read_sweep_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("sweep spec: cannot open " + path);
  return read_sweep_spec(in);
}

// ---------------------------------------------------------------------------
// Verification suites

Instance random_small_instance(const SmallInstanceSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  const int n = static_cast<int>(rng.next_int(spec.min_n, spec.max_n));
  const int channels = static_cast<int>(rng.next_int(1, spec.max_channels));

  Instance inst;
  inst.seed = seed;
  inst.graph = ConflictGraph(n, channels);
  inst.nodes.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    inst.nodes[static_cast<std::size_t>(i)] =
        Node{i, rng.next_real(0.0, 100.0), rng.next_real(0.0, 100.0)};
  }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (spec.clique || rng.next_real() < spec.edge_prob) inst.graph.add_edge(i, j);

  if (!spec.homogeneous) {
    for (int i = 0; i < n; ++i) {
      ChannelMask mask = 0;
      for (int k = 0; k < channels; ++k)
        if (rng.next_real() < spec.avail_prob) mask |= ChannelMask{1} << k;
      inst.graph.avail[static_cast<std::size_t>(i)] = mask;
    }
  }

  // Global pool of distinct values (shuffled) when ties must be impossible.
  std::vector<Money> pool;
  if (spec.distinct_values) {
    for (Money v = spec.value_min; v <= spec.value_max; ++v) pool.push_back(v);
    rng.shuffle(pool);
  }
  std::size_t pool_at = 0;

  inst.profiles.valuations.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int xi = inst.graph.available_count(i);
    int cap = std::min(spec.max_demand > 0 ? spec.max_demand : channels, xi);
    int demand = cap > 0 ? static_cast<int>(rng.next_int(0, cap)) : 0;
    ValuationVector v;
    for (int d = 0; d < demand; ++d) {
      if (spec.distinct_values) {
        if (pool_at >= pool.size()) break;  // ran out of distinct values
        v.push_back(pool[pool_at++]);
      } else {
        v.push_back(rng.next_int(spec.value_min, spec.value_max));
      }
    }
    std::sort(v.begin(), v.end(), std::greater<>());
    inst.profiles.valuations[static_cast<std::size_t>(i)] = std::move(v);
  }

  SharingParams sp;
  sp.bandwidth_bp.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    sp.bandwidth_bp[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_int(2000, 6000));
  inst.sharing = std::move(sp);
  return inst;
}

namespace {

std::string first_lines(const std::string& s, int limit) {
  std::istringstream in(s);
  std::ostringstream out;
  std::string line;
  for (int i = 0; i < limit && std::getline(in, line); ++i) out << line << "\n";
  return out.str();
}

}  // namespace

SuiteReport truthfulness_suite(int instances, std::uint64_t seed) {
  SuiteReport report;
  report.name = "truthfulness";
  Money worst_gap = 0;
  for (int t = 0; t < instances; ++t) {
    SmallInstanceSpec spec;
    spec.min_n = 2;
    spec.max_n = 6;
    spec.max_channels = 4;
    spec.max_demand = 3;
    spec.value_min = 0;
    spec.value_max = 12;
    std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    Instance inst = random_small_instance(spec, s);
    Rng rng(derive_seed(s, 0xDE));
    AuctionConfig cfg{rng.next_int(0, 2), rng.next_int(1, 2)};
    ++report.instances;
    for (int i = 0; i < inst.graph.n; ++i) {
      if (inst.profiles.of(i).empty()) continue;
      DeviationReport dev =
          enumerate_deviations(inst.graph, inst.profiles, cfg, i, spec.value_max);
      if (dev.best_utility > dev.truthful_utility) {
        ++report.violations;
        worst_gap = std::max(worst_gap, dev.best_utility - dev.truthful_utility);
        if (report.detail.empty())
          report.detail = "first violation: instance seed " + std::to_string(s) + ", bidder " +
                          std::to_string(i) + ", gain " +
                          std::to_string(dev.best_utility - dev.truthful_utility) + "\n" +
                          first_lines(io::write_instance(inst), 12);
        break;  // one violation per instance is enough
      }
    }
  }
  report.pass = report.violations == 0;
  if (report.detail.empty())
    report.detail = "no profitable deviation found; worst gain 0";
  return report;
}

SuiteReport efficiency_suite(int instances, std::uint64_t seed) {
  SuiteReport report;
  report.name = "efficiency";
  double total_gap_pct = 0;
  int gapped = 0;
  Money worst_gap = 0;
  std::string worst_example;
  for (int t = 0; t < instances; ++t) {
    SmallInstanceSpec spec;
    spec.min_n = 2;
    spec.max_n = 7;
    spec.max_channels = 4;
    spec.max_demand = 3;
    spec.value_min = 1;
    spec.value_max = 100;
    spec.distinct_values = true;
    std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    Instance inst = random_small_instance(spec, s);
    AuctionConfig cfg{0, 1};  // reserve 0 so low values are not excluded by fiat
    ++report.instances;
    Outcome outcome = run_exclusive_auction(inst.graph, inst.profiles, cfg);
    Money engine_welfare = 0;
    for (int i = 0; i < inst.graph.n; ++i)
      engine_welfare +=
          value_of_count(inst.profiles.of(i), outcome.counts[static_cast<std::size_t>(i)]);
    OracleResult best = optimal_welfare(inst.graph, inst.profiles);
    if (engine_welfare > best.best_value)
      throw std::logic_error("efficiency suite: engine exceeded an exhaustive optimum");
    if (engine_welfare != best.best_value) {
      ++report.violations;
      Money gap = best.best_value - engine_welfare;
      if (best.best_value > 0) {
        total_gap_pct += 100.0 * static_cast<double>(gap) / static_cast<double>(best.best_value);
        ++gapped;
      }
      if (gap > worst_gap) {
        worst_gap = gap;
        worst_example = "seed " + std::to_string(s) + ": engine " +
                        std::to_string(engine_welfare) + " vs optimal " +
                        std::to_string(best.best_value);
      }
    }
  }
  report.pass = report.violations == 0;
  std::ostringstream detail;
  detail << report.violations << "/" << report.instances
         << " instances below the welfare optimum";
  if (report.violations > 0) {
    detail << "; mean gap " << (gapped ? total_gap_pct / gapped : 0.0) << "% of optimum; worst "
           << worst_example;
    report.stat = gapped ? total_gap_pct / gapped : 0.0;
  }
  report.detail = detail.str();
  return report;
}

SuiteReport vickrey_equivalence_suite(int instances, std::uint64_t seed) {
  SuiteReport report;
  report.name = "vickrey-equivalence";
  for (int t = 0; t < instances; ++t) {
    SmallInstanceSpec spec;
    spec.min_n = 2;
    spec.max_n = 5;
    spec.max_channels = 4;
    spec.max_demand = 0;  // bounded by channel count
    spec.value_min = 1;
    spec.value_max = 100;
    spec.distinct_values = true;
    spec.clique = true;
    spec.homogeneous = true;
    std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    Instance inst = random_small_instance(spec, s);
    Rng rng(derive_seed(s, 0xC1));
    AuctionConfig cfg{rng.next_int(0, 5), 1};
    ++report.instances;
    Outcome outcome = run_exclusive_auction(inst.graph, inst.profiles, cfg);
    VickreyOutcome ref =
        vickrey_clique_reference(inst.profiles, inst.graph.channels, cfg.reserve_price);
    if (outcome.counts != ref.counts || outcome.payments != ref.payments) {
      ++report.violations;
      if (report.detail.empty())
        report.detail = "first mismatch at seed " + std::to_string(s);
    }
  }
  report.pass = report.violations == 0;
  if (report.detail.empty()) report.detail = "engine matches the Vickrey reference exactly";
  return report;
}

SuiteReport revenue_bound_suite(int instances, std::uint64_t seed) {
  SuiteReport report;
  report.name = "revenue-bound";
  double total_gap_pct = 0;
  double worst_gap_pct = 0;
  int counted = 0;
  // Gap distribution buckets: exact, (0,5], (5,10], (10,20], (20,35], >35 percent.
  const double edges[] = {0.0, 5.0, 10.0, 20.0, 35.0};
  int buckets[6] = {0, 0, 0, 0, 0, 0};
  for (int t = 0; t < instances; ++t) {
    SmallInstanceSpec spec;
    spec.min_n = 2;
    spec.max_n = 8;
    spec.max_channels = 4;
    spec.max_demand = 3;
    spec.value_min = 1;
    spec.value_max = 40;
    std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    Instance inst = random_small_instance(spec, s);
    Rng rng(derive_seed(s, 0xBD));
    AuctionConfig cfg{rng.next_int(0, 10), 1};
    ++report.instances;
    Outcome outcome = run_exclusive_auction(inst.graph, inst.profiles, cfg);
    OracleResult best = optimal_revenue_exclusive(inst.graph, inst.profiles, cfg);
    if (outcome.revenue > best.best_value) {
      ++report.violations;
      if (report.detail.empty())
        report.detail = "engine above oracle at seed " + std::to_string(s) + ": " +
                        std::to_string(outcome.revenue) + " > " +
                        std::to_string(best.best_value);
    }
    if (best.best_value > 0) {
      double gap_pct = 100.0 *
                       static_cast<double>(best.best_value - outcome.revenue) /
                       static_cast<double>(best.best_value);
      total_gap_pct += gap_pct;
      worst_gap_pct = std::max(worst_gap_pct, gap_pct);
      ++counted;
      int b = 5;
      for (int e = 0; e < 5; ++e)
        if (gap_pct <= edges[e]) { b = e; break; }
      ++buckets[b];
    }
  }
  report.pass = report.violations == 0;
  report.stat = counted ? total_gap_pct / counted : 0.0;
  std::ostringstream detail;
  detail << report.violations << " bound violations; mean revenue gap " << report.stat
         << "% of oracle over " << counted << " comparable instances; distribution: exact "
         << buckets[0] << ", <=5% " << buckets[1] << ", <=10% " << buckets[2] << ", <=20% "
         << buckets[3] << ", <=35% " << buckets[4] << ", >35% " << buckets[5] << "; worst "
         << worst_gap_pct << "%";
  if (!report.detail.empty()) detail << "; " << report.detail;
  report.detail = detail.str();
  return report;
}

SuiteReport sharing_dominance_suite(int instances, std::uint64_t seed) {
  SuiteReport report;
  report.name = "sharing-dominance";
  for (int t = 0; t < instances; ++t) {
    SmallInstanceSpec spec;
    spec.min_n = 2;
    spec.max_n = 8;
    spec.max_channels = 4;
    spec.max_demand = 3;
    spec.value_min = 1;
    spec.value_max = 30;
    std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    Instance inst = random_small_instance(spec, s);
    Rng rng(derive_seed(s, 0xD0));
    AuctionConfig cfg{rng.next_int(0, 5), rng.next_int(1, 2)};
    // Mix of regimes: sometimes sharing is impossible, sometimes easy.
    double tau_choice[] = {0.0, 200.0, 2000.0, 1e9};
    inst.sharing->model.tau_kelvin = tau_choice[rng.next_below(4)];
    ++report.instances;

    Outcome exclusive = run_exclusive_auction(inst.graph, inst.profiles, cfg);
    Outcome sharing =
        run_sharing_auction(inst.graph, inst.profiles, cfg, *inst.sharing, inst.nodes);

    validate_assignment(inst.graph, exclusive.counts, exclusive.assignment,
                        AssignMode::Exclusive);
    validate_assignment(inst.graph, sharing.counts, sharing.assignment, AssignMode::Sharing,
                        &*inst.sharing, &inst.nodes);

    int bidders = count_bidders(inst.graph, inst.profiles);
    double util_ex = spectrum_utilization(inst.graph, exclusive.assignment);
    double util_sh = spectrum_utilization(inst.graph, sharing.assignment);
    double win_ex = winner_percentage(exclusive.counts, bidders);
    double win_sh = winner_percentage(sharing.counts, bidders);
    if (util_sh < util_ex - 1e-9 || win_sh < win_ex - 1e-9) {
      ++report.violations;
      if (report.detail.empty())
        report.detail = "dominance broken at seed " + std::to_string(s) + ": utilization " +
                        std::to_string(util_sh) + " vs " + std::to_string(util_ex) +
                        ", winners " + std::to_string(win_sh) + " vs " + std::to_string(win_ex);
    }
  }
  report.pass = report.violations == 0;
  if (report.detail.empty())
    report.detail = "sharing never fell below exclusive on utilization or winner percentage";
  return report;
}

}  // namespace verum
