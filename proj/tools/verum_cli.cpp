// verum — interference-aware spectrum auction simulator.
//
// Subcommands:
//   gen     scenario config (key = value file) -> instance file
//   run     single auction on an instance (--mechanism, --reserve, --step,
//           --sharing, --tau, --log, -o result file)
//   sweep   parameter sweep from a sweep-spec file -> metrics CSV
//   oracle  brute-force benchmark on an instance (--mode exclusive|sharing|welfare)
//   verify  randomized property suites (truthfulness, efficiency, vickrey,
//           revenue-bound, sharing-dominance)
//
// Exit status: 0 on success; 1 on errors; `verify` exits 2 when a suite fails.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "verum/assign.hpp"
#include "verum/clinch.hpp"
#include "verum/harness.hpp"
#include "verum/instance_io.hpp"
#include "verum/metrics.hpp"
#include "verum/oracle.hpp"
#include "verum/scenario.hpp"
#include "verum/sharing.hpp"
#include "verum/types.hpp"

namespace {

using namespace verum;

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

int cmd_gen(const std::string& config_path, const std::string& out_path,
            std::optional<std::uint64_t> seed) {
  ScenarioConfig cfg = io::read_scenario_config_file(config_path);
  if (seed) cfg.rng_seed = *seed;
  Instance inst = generate_instance(cfg);
  std::string text = io::write_instance(inst);
  if (out_path.empty() || out_path == "-")
    std::cout << text;
  else
    write_text_file(out_path, text);
  std::cerr << "generated n=" << inst.graph.n << " C=" << inst.graph.channels
            << " edges=" << inst.graph.edge_count() << " seed=" << inst.seed << "\n";
  return 0;
}

int cmd_run(const std::string& instance_path, std::string mechanism, Money reserve, Money step,
            bool sharing_flag, std::optional<double> tau, bool log_rounds,
            const std::string& out_path) {
  Instance inst = io::read_instance_file(instance_path);
  if (sharing_flag) mechanism = "verum-sharing";
  if (tau) {
    if (!inst.sharing) throw std::runtime_error("--tau given but the instance has no sharing block");
    inst.sharing->model.tau_kelvin = *tau;
  }

  AuctionConfig cfg{reserve, step};
  RoundObserver observer;
  if (log_rounds) {
    observer = [](const RoundRecord& r) {
      int total = 0;
      for (int d : r.demands) total += d;
      std::cout << "round " << r.round << " price " << r.price << " total-demand " << total;
      for (const ClinchEvent& e : r.clinches)
        std::cout << "  [" << e.bidder << " +" << e.count << " @" << e.price << "]";
      std::cout << "\n";
    };
  }

  Outcome outcome;
  if (mechanism == "verum-exclusive") {
    outcome = run_exclusive_auction(inst.graph, inst.profiles, cfg, observer);
  } else if (mechanism == "verum-sharing") {
    if (!inst.sharing) throw std::runtime_error("instance has no sharing block");
    outcome = run_sharing_auction(inst.graph, inst.profiles, cfg, *inst.sharing, inst.nodes,
                                  observer);
  } else if (mechanism == "greedy-baseline") {
    outcome = greedy_baseline(inst.graph, inst.profiles);
  } else {
    throw std::runtime_error("unknown mechanism '" + mechanism + "'");
  }

  int winners = 0;
  for (int c : outcome.counts)
    if (c > 0) ++winners;
  std::cout << "mechanism " << mechanism << "\n"
            << "revenue " << outcome.revenue << "\n"
            << "rounds " << outcome.rounds << "\n"
            << "winners " << winners << "\n"
            << "utilization_pct " << spectrum_utilization(inst.graph, outcome.assignment) << "\n"
            << "winner_pct "
            << winner_percentage(outcome.counts, count_bidders(inst.graph, inst.profiles))
            << "\n";
  if (!out_path.empty()) write_text_file(out_path, io::write_result(inst, outcome, mechanism));
  return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_path, int threads) {
  SweepSpec spec = read_sweep_spec_file(spec_path);
  std::vector<MetricsRow> rows = run_sweep(spec, threads);
  std::string csv = rows_to_csv(rows);
  if (out_path.empty() || out_path == "-")
    std::cout << csv;
  else
    write_text_file(out_path, csv);
  std::cerr << rows.size() << " rows (" << spec.values.size() << " points x " << spec.replicates
            << " replicates x " << spec.mechanisms.size() << " mechanisms)\n";
  return 0;
}

int cmd_oracle(const std::string& instance_path, const std::string& mode, Money reserve,
               Money step, const std::string& out_path) {
  Instance inst = io::read_instance_file(instance_path);
  AuctionConfig cfg{reserve, step};
  OracleResult result;
  if (mode == "exclusive") {
    result = optimal_revenue_exclusive(inst.graph, inst.profiles, cfg);
  } else if (mode == "sharing") {
    if (!inst.sharing) throw std::runtime_error("instance has no sharing block");
    result = optimal_revenue_sharing(inst.graph, inst.profiles, cfg, *inst.sharing, inst.nodes);
  } else if (mode == "welfare") {
    result = optimal_welfare(inst.graph, inst.profiles);
  } else {
    throw std::runtime_error("unknown oracle mode '" + mode + "'");
  }
  std::cout << "mode " << mode << "\n"
            << "best_value " << result.best_value << "\n"
            << "enumerated " << result.enumerated << "\n";
  if (!result.pricing_note.empty()) std::cout << "pricing " << result.pricing_note << "\n";
  if (!out_path.empty())
    write_text_file(out_path, io::write_oracle_result(inst, result, mode));
  return 0;
}

int cmd_verify(const std::string& suite, int instances, std::uint64_t seed) {
  std::vector<SuiteReport> reports;
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  if (want("truthfulness")) reports.push_back(truthfulness_suite(instances, seed));
  if (want("efficiency")) reports.push_back(efficiency_suite(instances, seed));
  if (want("vickrey")) reports.push_back(vickrey_equivalence_suite(instances, seed));
  if (want("revenue-bound")) reports.push_back(revenue_bound_suite(instances, seed));
  if (want("sharing-dominance")) reports.push_back(sharing_dominance_suite(instances, seed));
  if (reports.empty()) throw std::runtime_error("unknown suite '" + suite + "'");

  bool all_pass = true;
  for (const SuiteReport& r : reports) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.instances
              << " instances, " << r.violations << " violations)\n";
    if (!r.detail.empty()) std::cout << "       " << r.detail << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verum: online clinching auction for interference-aware spectrum sharing"};
  app.require_subcommand(1);

  // gen
  std::string gen_config, gen_out;
  std::optional<std::uint64_t> gen_seed;
  auto* gen = app.add_subcommand("gen", "generate an instance from a scenario config");
  gen->add_option("config", gen_config, "scenario config file (key = value)")->required();
  gen->add_option("-o,--output", gen_out, "instance file path ('-' or empty: stdout)");
  gen->add_option("--seed", gen_seed, "override the config's rng_seed");

  // run
  std::string run_instance, run_mechanism = "verum-exclusive", run_out;
  Money run_reserve = 10, run_step = 1;
  bool run_sharing = false, run_log = false;
  std::optional<double> run_tau;
  auto* run = app.add_subcommand("run", "run one auction on an instance file");
  run->add_option("instance", run_instance, "instance file")->required();
  run->add_option("--mechanism", run_mechanism,
                  "verum-exclusive | verum-sharing | greedy-baseline");
  run->add_option("--reserve", run_reserve, "reserve price (default 10)");
  run->add_option("--step", run_step, "price step (default 1)");
  run->add_flag("--sharing", run_sharing, "shorthand for --mechanism verum-sharing");
  run->add_option("--tau", run_tau, "override the interference temperature limit (kelvin)");
  run->add_flag("--log", run_log, "print one line per auction round");
  run->add_option("-o,--output", run_out, "write a result file here");

  // sweep
  std::string sweep_spec, sweep_out;
  int sweep_threads = 1;
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep, emit metrics CSV");
  sweep->add_option("spec", sweep_spec, "sweep spec file")->required();
  sweep->add_option("-o,--output", sweep_out, "CSV path ('-' or empty: stdout)");
  sweep->add_option("--threads", sweep_threads, "worker threads (default 1)");

  // oracle
  std::string oracle_instance, oracle_mode = "exclusive", oracle_out;
  Money oracle_reserve = 10, oracle_step = 1;
  auto* oracle = app.add_subcommand("oracle", "brute-force benchmark on an instance");
  oracle->add_option("instance", oracle_instance, "instance file")->required();
  oracle->add_option("--mode", oracle_mode, "exclusive | sharing | welfare");
  oracle->add_option("--reserve", oracle_reserve, "price grid start (revenue modes)");
  oracle->add_option("--step", oracle_step, "price grid step (revenue modes)");
  oracle->add_option("-o,--output", oracle_out, "write an oracle result file here");

  // verify
  std::string verify_suite = "all";
  int verify_instances = 200;
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "randomized property suites");
  verify->add_option("--suite", verify_suite,
                     "all | truthfulness | efficiency | vickrey | revenue-bound | "
                     "sharing-dominance");
  verify->add_option("--instances", verify_instances, "instances per suite (default 200)");
  verify->add_option("--seed", verify_seed, "master seed (default 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_config, gen_out, gen_seed);
    if (run->parsed())
      return cmd_run(run_instance, run_mechanism, run_reserve, run_step, run_sharing, run_tau,
                     run_log, run_out);
    if (sweep->parsed()) return cmd_sweep(sweep_spec, sweep_out, sweep_threads);
    if (oracle->parsed())
      return cmd_oracle(oracle_instance, oracle_mode, oracle_reserve, oracle_step, oracle_out);
    if (verify->parsed()) return cmd_verify(verify_suite, verify_instances, verify_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
