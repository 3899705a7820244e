#include "verum/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "verum/scenario.hpp"
#include "verum/sharing.hpp"

namespace verum::io {
namespace {

// Doubles are printed via to_chars (shortest representation that round-trips
// exactly), never via iostream formatting, so files are byte-stable across
// locales and platforms.
std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc())
    throw std::runtime_error("io: failed to format a floating-point value");
  return std::string(buf, ptr);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty line; '#' starts a comment.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
        line.pop_back();
      std::size_t start = line.find_first_not_of(" \t");
      if (start == std::string::npos) continue;
      line.erase(0, start);
      ++line_no_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("io: " + what + " (around content line " +
                             std::to_string(line_no_) + ")");
  }

  std::string expect(const std::string& what) {
    std::string line;
    if (!next(line)) fail("unexpected end of file, expected " + what);
    return line;
  }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

std::string expect_keyword_line(LineReader& r, const std::string& keyword) {
  std::string line = r.expect(keyword);
  std::istringstream ss(line);
  std::string word;
  ss >> word;
  if (word != keyword) r.fail("expected '" + keyword + "', got '" + word + "'");
  std::string rest;
  std::getline(ss, rest);
  std::size_t start = rest.find_first_not_of(" \t");
  return start == std::string::npos ? std::string() : rest.substr(start);
}

template <typename T>
T parse_value(LineReader& r, const std::string& text, const std::string& what) {
  std::istringstream ss(text);
  T v{};
  if (!(ss >> v)) r.fail("cannot parse " + what + " from '" + text + "'");
  std::string trailing;
  if (ss >> trailing) r.fail("trailing data after " + what + ": '" + trailing + "'");
  return v;
}

}  // namespace

std::string write_instance(const Instance& inst) {
  const ConflictGraph& g = inst.graph;
  std::ostringstream out;
  out << "verum-instance 1\n";
  out << "n " << g.n << "\n";
  out << "channels " << g.channels << "\n";
  out << "seed " << inst.seed << "\n";
  out << "positions\n";
  for (const Node& node : inst.nodes) out << fmt(node.x) << " " << fmt(node.y) << "\n";
  out << "adjacency\n";
  for (int i = 0; i < g.n; ++i) {
    out << g.neighbors(i).size();
    for (int j : g.neighbors(i)) out << " " << j;
    out << "\n";
  }
  out << "availability\n";
  for (int i = 0; i < g.n; ++i) {
    for (int k = 0; k < g.channels; ++k) out << (g.available(i, k) ? '1' : '0');
    out << "\n";
  }
  out << "valuations\n";
  for (int i = 0; i < g.n; ++i) {
    const ValuationVector& v = inst.profiles.of(i);
    out << v.size();
    for (Money m : v) out << " " << m;
    out << "\n";
  }
  out << "sharing " << (inst.sharing.has_value() ? 1 : 0) << "\n";
  if (inst.sharing) {
    const SharingParams& sp = *inst.sharing;
    out << "bandwidth_bp";
    for (int b : sp.bandwidth_bp) out << " " << b;
    out << "\n";
    out << "tau_kelvin " << fmt(sp.model.tau_kelvin) << "\n";
    out << "ref_power_watts " << fmt(sp.model.ref_power_watts) << "\n";
    out << "ref_distance_m " << fmt(sp.model.ref_distance_m) << "\n";
    out << "path_loss_exponent " << fmt(sp.model.path_loss_exponent) << "\n";
    out << "channel_bandwidth_hz " << fmt(sp.model.channel_bandwidth_hz) << "\n";
  }
  out << "end\n";
  return out.str();
}

Instance read_instance(std::istream& in) {
  LineReader r(in);
  std::string header = r.expect("header");
  if (header != "verum-instance 1") r.fail("not a verum-instance version 1 file");

  Instance inst;
  int n = parse_value<int>(r, expect_keyword_line(r, "n"), "n");
  int channels = parse_value<int>(r, expect_keyword_line(r, "channels"), "channels");
  if (n < 0 || channels < 1 || channels > kMaxChannels) r.fail("header out of range");
  inst.seed = parse_value<std::uint64_t>(r, expect_keyword_line(r, "seed"), "seed");

  inst.graph = ConflictGraph(n, channels);

  expect_keyword_line(r, "positions");
  inst.nodes.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::istringstream ss(r.expect("a position line"));
    Node& node = inst.nodes[static_cast<std::size_t>(i)];
    node.id = i;
    if (!(ss >> node.x >> node.y)) r.fail("bad position line");
  }

  expect_keyword_line(r, "adjacency");
  for (int i = 0; i < n; ++i) {
    std::istringstream ss(r.expect("an adjacency line"));
    int deg = 0;
    if (!(ss >> deg) || deg < 0 || deg >= n + 1) r.fail("bad adjacency degree");
    auto& row = inst.graph.adj[static_cast<std::size_t>(i)];
    row.resize(static_cast<std::size_t>(deg));
    for (int d = 0; d < deg; ++d)
      if (!(ss >> row[static_cast<std::size_t>(d)])) r.fail("bad adjacency entry");
  }

  expect_keyword_line(r, "availability");
  for (int i = 0; i < n; ++i) {
    std::string bits = r.expect("an availability bitstring");
    if (static_cast<int>(bits.size()) != channels) r.fail("availability bitstring length");
    ChannelMask mask = 0;
    for (int k = 0; k < channels; ++k) {
      char c = bits[static_cast<std::size_t>(k)];
      if (c != '0' && c != '1') r.fail("availability bitstring character");
      if (c == '1') mask |= ChannelMask{1} << k;
    }
    inst.graph.avail[static_cast<std::size_t>(i)] = mask;
  }

  expect_keyword_line(r, "valuations");
  inst.profiles.valuations.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::istringstream ss(r.expect("a valuation line"));
    int len = 0;
    if (!(ss >> len) || len < 0) r.fail("bad valuation count");
    auto& v = inst.profiles.valuations[static_cast<std::size_t>(i)];
    v.resize(static_cast<std::size_t>(len));
    for (int d = 0; d < len; ++d)
      if (!(ss >> v[static_cast<std::size_t>(d)])) r.fail("bad valuation entry");
  }

  int sharing_flag = parse_value<int>(r, expect_keyword_line(r, "sharing"), "sharing flag");
  if (sharing_flag != 0 && sharing_flag != 1) r.fail("sharing flag must be 0 or 1");
  if (sharing_flag == 1) {
    SharingParams sp;
    {
      std::istringstream ss(expect_keyword_line(r, "bandwidth_bp"));
      sp.bandwidth_bp.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        if (!(ss >> sp.bandwidth_bp[static_cast<std::size_t>(i)])) r.fail("bad bandwidth entry");
    }
    sp.model.tau_kelvin =
        parse_value<double>(r, expect_keyword_line(r, "tau_kelvin"), "tau_kelvin");
    sp.model.ref_power_watts =
        parse_value<double>(r, expect_keyword_line(r, "ref_power_watts"), "ref_power_watts");
    sp.model.ref_distance_m =
        parse_value<double>(r, expect_keyword_line(r, "ref_distance_m"), "ref_distance_m");
    sp.model.path_loss_exponent = parse_value<double>(
        r, expect_keyword_line(r, "path_loss_exponent"), "path_loss_exponent");
    sp.model.channel_bandwidth_hz = parse_value<double>(
        r, expect_keyword_line(r, "channel_bandwidth_hz"), "channel_bandwidth_hz");
    inst.sharing = std::move(sp);
  }

  if (r.expect("end") != "end") r.fail("missing end marker");

  sort_adjacency(inst.graph);
  validate(inst.graph);
  validate(inst.profiles);
  if (inst.profiles.size() != inst.graph.n) r.fail("profile/graph size mismatch");
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io: cannot open instance file: " + path);
  return read_instance(in);
}

void write_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("io: cannot write instance file: " + path);
  out << write_instance(inst);
}

std::string write_result(const Instance& inst, const Outcome& outcome,
                         const std::string& mechanism) {
  const ConflictGraph& g = inst.graph;
  std::ostringstream out;
  out << "verum-result 1\n";
  out << "mechanism " << mechanism << "\n";
  out << "n " << g.n << "\n";
  out << "channels " << g.channels << "\n";
  out << "revenue " << outcome.revenue << "\n";
  out << "rounds " << outcome.rounds << "\n";
  out << "bidders\n";
  for (int i = 0; i < g.n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    out << i << " " << outcome.counts[iu] << " " << outcome.payments[iu];
    for (int k = 0; k < g.channels; ++k)
      if (outcome.assignment.uses(i, k)) out << " " << k;
    out << "\n";
  }
  out << "channel_users\n";
  for (int k = 0; k < g.channels; ++k) {
    out << k;
    for (int i = 0; i < g.n; ++i)
      if (outcome.assignment.uses(i, k)) out << " " << i;
    out << "\n";
  }
  out << "ledger " << outcome.ledger.size() << "\n";
  for (const ClinchEvent& e : outcome.ledger)
    out << e.bidder << " " << e.count << " " << e.price << "\n";
  out << "end\n";
  return out.str();
}

std::string write_oracle_result(const Instance& inst, const OracleResult& result,
                                const std::string& mode) {
  const ConflictGraph& g = inst.graph;
  std::ostringstream out;
  out << "verum-oracle-result 1\n";
  out << "mode " << mode << "\n";
  out << "pricing " << (result.pricing_note.empty() ? "total-welfare" : result.pricing_note)
      << "\n";
  out << "best_value " << result.best_value << "\n";
  out << "enumerated " << result.enumerated << "\n";
  out << "n " << g.n << "\n";
  out << "channels " << g.channels << "\n";
  out << "allocation\n";
  for (int i = 0; i < g.n; ++i) {
    out << i << " " << result.best_counts[static_cast<std::size_t>(i)];
    for (int k = 0; k < g.channels; ++k)
      if (result.best_assignment.uses(i, k)) out << " " << k;
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

bool apply_scenario_key(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  auto bad = [&](const std::string& what) {
    throw std::runtime_error("io: cannot parse " + what + " from '" + value + "'");
  };
  auto as_int = [&]() {
    std::istringstream ss(value);
    int v{};
    std::string tail;
    if (!(ss >> v) || (ss >> tail)) bad(key);
    return v;
  };
  auto as_double = [&]() {
    std::istringstream ss(value);
    double v{};
    std::string tail;
    if (!(ss >> v) || (ss >> tail)) bad(key);
    return v;
  };
  auto as_u64 = [&]() {
    std::istringstream ss(value);
    std::uint64_t v{};
    std::string tail;
    if (!(ss >> v) || (ss >> tail)) bad(key);
    return v;
  };

  if (key == "n") cfg.n = as_int();
  else if (key == "area_side") cfg.area_side = as_double();
  else if (key == "density_profile") cfg.density_profile = value;
  else if (key == "interference_range") cfg.interference_range = as_double();
  else if (key == "C") cfg.C = as_int();
  else if (key == "third_party_fraction") cfg.third_party_fraction = as_double();
  else if (key == "third_party_consumption") cfg.third_party_consumption = as_double();
  else if (key == "avg_demand_pct") cfg.avg_demand_pct = as_double();
  else if (key == "valuation_range") {
    std::istringstream ss(value);
    if (!(ss >> cfg.valuation_min >> cfg.valuation_max)) bad("valuation_range");
  }
  else if (key == "rng_seed") cfg.rng_seed = as_u64();
  else if (key == "sharing_enabled") cfg.sharing_enabled = as_int() != 0;
  else if (key == "sharing_b_min_bp") cfg.sharing_b_min_bp = as_int();
  else if (key == "sharing_b_max_bp") cfg.sharing_b_max_bp = as_int();
  else if (key == "tau_kelvin") cfg.sharing_model.tau_kelvin = as_double();
  else if (key == "ref_power_watts") cfg.sharing_model.ref_power_watts = as_double();
  else if (key == "ref_distance_m") cfg.sharing_model.ref_distance_m = as_double();
  else if (key == "path_loss_exponent") cfg.sharing_model.path_loss_exponent = as_double();
  else if (key == "channel_bandwidth_hz") cfg.sharing_model.channel_bandwidth_hz = as_double();
  else return false;
  return true;
}

ScenarioConfig read_scenario_config(std::istream& in) {
  LineReader r(in);
  ScenarioConfig cfg;
  std::string line;
  while (r.next(line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) r.fail("expected 'key = value', got '" + line + "'");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      std::size_t a = s.find_first_not_of(" \t");
      std::size_t b = s.find_last_not_of(" \t");
      s = (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
    };
    trim(key);
    trim(value);
    if (!apply_scenario_key(cfg, key, value)) r.fail("unknown scenario key '" + key + "'");
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig read_scenario_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io: cannot open scenario config: " + path);
  return read_scenario_config(in);
}

std::string write_scenario_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "n = " << cfg.n << "\n";
  out << "area_side = " << fmt(cfg.area_side) << "\n";
  out << "density_profile = " << cfg.density_profile << "\n";
  out << "interference_range = " << fmt(cfg.interference_range) << "\n";
  out << "C = " << cfg.C << "\n";
  out << "third_party_fraction = " << fmt(cfg.third_party_fraction) << "\n";
  out << "third_party_consumption = " << fmt(cfg.third_party_consumption) << "\n";
  out << "avg_demand_pct = " << fmt(cfg.avg_demand_pct) << "\n";
  out << "valuation_range = " << cfg.valuation_min << " " << cfg.valuation_max << "\n";
  out << "rng_seed = " << cfg.rng_seed << "\n";
  out << "sharing_enabled = " << (cfg.sharing_enabled ? 1 : 0) << "\n";
  out << "sharing_b_min_bp = " << cfg.sharing_b_min_bp << "\n";
  out << "sharing_b_max_bp = " << cfg.sharing_b_max_bp << "\n";
  out << "tau_kelvin = " << fmt(cfg.sharing_model.tau_kelvin) << "\n";
  out << "ref_power_watts = " << fmt(cfg.sharing_model.ref_power_watts) << "\n";
  out << "ref_distance_m = " << fmt(cfg.sharing_model.ref_distance_m) << "\n";
  out << "path_loss_exponent = " << fmt(cfg.sharing_model.path_loss_exponent) << "\n";
  out << "channel_bandwidth_hz = " << fmt(cfg.sharing_model.channel_bandwidth_hz) << "\n";
  return out.str();
}

}  // namespace verum::io
