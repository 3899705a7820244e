#include "verum/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "verum/rng.hpp"

namespace verum {
namespace {

constexpr double kUrbanHomesPerKm2 = 2435.0;
constexpr double kDenseUrbanHomesPerKm2 = 5456.0;

// Matern-style clustering knobs for the dense-urban profile: offspring
// scatter radius and mean cluster size.
constexpr double kClusterRadius = 25.0;
constexpr int kClusterSize = 8;

double side_for_density(int n, double homes_per_km2) {
  return std::sqrt(static_cast<double>(n) / homes_per_km2) * 1000.0;
}

std::vector<Node> uniform_in_square(int n, double side, Rng& rng) {
  std::vector<Node> nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(i)] = {i, rng.next_real(0.0, side), rng.next_real(0.0, side)};
  }
  return nodes;
}

std::vector<Node> clustered_in_square(int n, double side, Rng& rng) {
  int parents = std::max(1, (n + kClusterSize - 1) / kClusterSize);
  std::vector<std::pair<double, double>> centers(static_cast<std::size_t>(parents));
  for (auto& c : centers) c = {rng.next_real(0.0, side), rng.next_real(0.0, side)};
  std::vector<Node> nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& c = centers[static_cast<std::size_t>(i % parents)];
    // uniform offset in a disc of radius kClusterRadius
    double r = kClusterRadius * std::sqrt(rng.next_real());
    double theta = rng.next_real(0.0, 2.0 * 3.14159265358979323846);
    double x = std::clamp(c.first + r * std::cos(theta), 0.0, side);
    double y = std::clamp(c.second + r * std::sin(theta), 0.0, side);
    nodes[static_cast<std::size_t>(i)] = {i, x, y};
  }
  return nodes;
}

}  // namespace

void validate(const ScenarioConfig& cfg) {
  if (cfg.n <= 0) throw std::invalid_argument("scenario: n must be positive");
  if (cfg.C <= 0 || cfg.C > kMaxChannels)
    throw std::invalid_argument("scenario: C out of range");
  if (cfg.density_profile != "uniform" && cfg.density_profile != "urban" &&
      cfg.density_profile != "dense-urban")
    throw std::invalid_argument("scenario: unknown density_profile");
  if (cfg.density_profile == "uniform" && cfg.area_side <= 0.0)
    throw std::invalid_argument("scenario: area_side must be positive for the uniform profile");
  if (cfg.interference_range < 0.0)
    throw std::invalid_argument("scenario: negative interference_range");
  if (cfg.third_party_fraction < 0.0 || cfg.third_party_fraction >= 1.0)
    throw std::invalid_argument("scenario: third_party_fraction must be in [0, 1)");
  if (cfg.third_party_consumption < 0.0 || cfg.third_party_consumption > 1.0)
    throw std::invalid_argument("scenario: third_party_consumption must be in [0, 1]");
  if (cfg.avg_demand_pct <= 0.0 || cfg.avg_demand_pct > 100.0)
    throw std::invalid_argument("scenario: avg_demand_pct must be in (0, 100]");
  if (cfg.valuation_min < 0 || cfg.valuation_max < cfg.valuation_min)
    throw std::invalid_argument("scenario: bad valuation range");
  if (cfg.sharing_enabled) {
    if (cfg.sharing_b_min_bp <= 0 || cfg.sharing_b_max_bp > 10000 ||
        cfg.sharing_b_min_bp > cfg.sharing_b_max_bp)
      throw std::invalid_argument("scenario: sharing bandwidth fractions out of range");
    if (cfg.sharing_model.tau_kelvin < 0.0)
      throw std::invalid_argument("scenario: negative tau");
  }
}

std::vector<Node> place_nodes(const ScenarioConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  if (cfg.density_profile == "urban")
    return uniform_in_square(cfg.n, side_for_density(cfg.n, kUrbanHomesPerKm2), rng);
  if (cfg.density_profile == "dense-urban")
    return clustered_in_square(cfg.n, side_for_density(cfg.n, kDenseUrbanHomesPerKm2), rng);
  return uniform_in_square(cfg.n, cfg.area_side, rng);
}

ConflictGraph build_conflict_graph(const std::vector<Node>& nodes, double range, int channels) {
  ConflictGraph g(static_cast<int>(nodes.size()), channels);
  const double r2 = range * range;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      double dx = nodes[i].x - nodes[j].x;
      double dy = nodes[i].y - nodes[j].y;
      if (dx * dx + dy * dy <= r2) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  sort_adjacency(g);
  return g;
}

ThirdPartyResult apply_third_party_at(const ConflictGraph& g, const std::vector<Node>& nodes,
                                      const std::vector<int>& third_party_ids,
                                      double consumption, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<bool> is_third(static_cast<std::size_t>(g.n), false);
  for (int id : third_party_ids) {
    if (id < 0 || id >= g.n) throw std::invalid_argument("third party id out of range");
    is_third[static_cast<std::size_t>(id)] = true;
  }

  // Each third party consumes floor(consumption * C) channels of its own
  // choosing; those become unavailable at the node and all its neighbors.
  std::vector<ChannelMask> avail = g.avail;
  int consumed = static_cast<int>(std::floor(consumption * g.channels + 1e-9));
  for (int id : third_party_ids) {
    ChannelMask blanked = 0;
    for (int k : rng.sample_indices(g.channels, consumed)) blanked |= ChannelMask{1} << k;
    avail[static_cast<std::size_t>(id)] &= ~blanked;
    for (int j : g.neighbors(id)) avail[static_cast<std::size_t>(j)] &= ~blanked;
  }

  ThirdPartyResult out;
  std::vector<int> new_id(static_cast<std::size_t>(g.n), -1);
  for (int i = 0; i < g.n; ++i) {
    if (is_third[static_cast<std::size_t>(i)]) continue;
    new_id[static_cast<std::size_t>(i)] = static_cast<int>(out.kept_original.size());
    out.kept_original.push_back(i);
  }
  out.graph = ConflictGraph(static_cast<int>(out.kept_original.size()), g.channels);
  out.nodes.reserve(out.kept_original.size());
  for (std::size_t i = 0; i < out.kept_original.size(); ++i) {
    int orig = out.kept_original[i];
    Node node = nodes.empty() ? Node{orig, 0.0, 0.0} : nodes[static_cast<std::size_t>(orig)];
    node.id = static_cast<int>(i);
    out.nodes.push_back(node);
    out.graph.avail[i] = avail[static_cast<std::size_t>(orig)];
    for (int j : g.neighbors(orig)) {
      int nj = new_id[static_cast<std::size_t>(j)];
      if (nj > static_cast<int>(i)) out.graph.add_edge(static_cast<int>(i), nj);
    }
  }
  sort_adjacency(out.graph);
  return out;
}

ThirdPartyResult apply_third_party(const ConflictGraph& g, const std::vector<Node>& nodes,
                                   double fraction, double consumption, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0xA11CE));
  int count = static_cast<int>(std::llround(fraction * g.n));
  count = std::clamp(count, 0, g.n);
  std::vector<int> ids = rng.sample_indices(g.n, count);
  std::sort(ids.begin(), ids.end());
  return apply_third_party_at(g, nodes, ids, consumption, derive_seed(seed, 0xB1A2C));
}

BidderProfiles generate_demands_valuations(const ConflictGraph& g, const ScenarioConfig& cfg,
                                           std::uint64_t seed) {
  bool any = false;
  for (int i = 0; i < g.n; ++i)
    if (g.available_count(i) > 0) any = true;
  if (!any) throw std::runtime_error("scenario degenerate: no bidder has any channel");

  Rng rng(seed);

  // Demand percentages: antithetic pairs (u, 2*avg - u) over a symmetric
  // window keep the sample mean pinned to avg_demand_pct.
  const double avg = cfg.avg_demand_pct;
  const double window = std::min(avg, 100.0 - avg);
  std::vector<double> pct(static_cast<std::size_t>(g.n), avg);
  for (int i = 0; i + 1 < g.n; i += 2) {
    double u = rng.next_real(avg - window, avg + window);
    pct[static_cast<std::size_t>(i)] = u;
    pct[static_cast<std::size_t>(i) + 1] = 2.0 * avg - u;
  }

  BidderProfiles profiles;
  profiles.valuations.resize(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    int x = g.available_count(i);
    int demand = static_cast<int>(std::floor(pct[static_cast<std::size_t>(i)] * x / 100.0 + 0.5 + 1e-9));
    demand = std::clamp(demand, 0, x);
    ValuationVector v(static_cast<std::size_t>(demand));
    for (auto& val : v) val = rng.next_int(cfg.valuation_min, cfg.valuation_max);
    std::sort(v.begin(), v.end(), std::greater<>());
    profiles.valuations[static_cast<std::size_t>(i)] = std::move(v);
  }
  return profiles;
}

SharingParams generate_sharing_params(int n, const ScenarioConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  SharingParams sp;
  sp.model = cfg.sharing_model;
  sp.bandwidth_bp.resize(static_cast<std::size_t>(n));
  for (auto& bp : sp.bandwidth_bp)
    bp = static_cast<int>(rng.next_int(cfg.sharing_b_min_bp, cfg.sharing_b_max_bp));
  return sp;
}

Instance generate_instance(const ScenarioConfig& cfg) {
  validate(cfg);
  Instance inst;
  inst.seed = cfg.rng_seed;
  inst.nodes = place_nodes(cfg, derive_seed(cfg.rng_seed, 1));
  inst.graph = build_conflict_graph(inst.nodes, cfg.interference_range, cfg.C);
  if (cfg.third_party_fraction > 0.0) {
    ThirdPartyResult tp = apply_third_party(inst.graph, inst.nodes, cfg.third_party_fraction,
                                            cfg.third_party_consumption, derive_seed(cfg.rng_seed, 2));
    inst.graph = std::move(tp.graph);
    inst.nodes = std::move(tp.nodes);
  }
  inst.profiles = generate_demands_valuations(inst.graph, cfg, derive_seed(cfg.rng_seed, 3));
  if (cfg.sharing_enabled)
    inst.sharing = generate_sharing_params(inst.graph.n, cfg, derive_seed(cfg.rng_seed, 4));
  return inst;
}

}  // namespace verum
