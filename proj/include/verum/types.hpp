#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace verum {

// All prices and valuations are integer virtual-currency units.
using Money = std::int64_t;

// Channel availability / assignment sets are bitmasks; bit k = channel k.
using ChannelMask = std::uint64_t;

inline constexpr int kMaxChannels = 64;

inline int mask_count(ChannelMask m) { return std::popcount(m); }

struct Node {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
};

// Undirected conflict graph over bidders plus per-bidder channel availability.
// Two adjacent bidders must not transmit on the same channel (unless the
// channel-sharing extension admits both); non-adjacent bidders may reuse
// channels freely.
struct ConflictGraph {
  int n = 0;
  int channels = 0;                   // C: total channels in the band
  std::vector<std::vector<int>> adj;  // sorted neighbor lists, symmetric, irreflexive
  std::vector<ChannelMask> avail;     // X_i: channels usable at bidder i

  ConflictGraph() = default;
  ConflictGraph(int n_, int channels_) : n(n_), channels(channels_) {
    if (channels_ < 0 || channels_ > kMaxChannels)
      throw std::invalid_argument("ConflictGraph: channel count out of range");
    adj.assign(static_cast<std::size_t>(n_), {});
    ChannelMask full = channels_ == kMaxChannels ? ~ChannelMask{0} : (ChannelMask{1} << channels_) - 1;
    avail.assign(static_cast<std::size_t>(n_), full);
  }

  // x_i: number of channels available at i
  int available_count(int i) const { return mask_count(avail[static_cast<std::size_t>(i)]); }

  bool available(int i, int k) const {
    return (avail[static_cast<std::size_t>(i)] >> k) & 1u;
  }

  const std::vector<int>& neighbors(int i) const { return adj[static_cast<std::size_t>(i)]; }

  bool has_edge(int i, int j) const {
    const auto& a = adj[static_cast<std::size_t>(i)];
    for (int v : a)
      if (v == j) return true;
    return false;
  }

  void add_edge(int i, int j) {
    if (i == j) throw std::invalid_argument("ConflictGraph: self edge");
    adj[static_cast<std::size_t>(i)].push_back(j);
    adj[static_cast<std::size_t>(j)].push_back(i);
  }

  std::size_t edge_count() const {
    std::size_t deg = 0;
    for (const auto& a : adj) deg += a.size();
    return deg / 2;
  }
};

void sort_adjacency(ConflictGraph& g);
// Throws std::invalid_argument when structural invariants are broken
// (asymmetric edges, self loops, availability bits beyond C).
void validate(const ConflictGraph& g);

// One bidder's private marginal valuations, weakly decreasing.  The vector
// length is the bidder's demand D_i: how many channels it wants at most.
using ValuationVector = std::vector<Money>;

struct BidderProfiles {
  std::vector<ValuationVector> valuations;

  int size() const { return static_cast<int>(valuations.size()); }
  const ValuationVector& of(int i) const { return valuations[static_cast<std::size_t>(i)]; }
  int demand_cap(int i) const { return static_cast<int>(valuations[static_cast<std::size_t>(i)].size()); }
  Money max_value() const {
    Money m = 0;
    for (const auto& v : valuations)
      if (!v.empty() && v.front() > m) m = v.front();
    return m;
  }
};

// Throws if some vector is not weakly decreasing or holds negative values.
void validate(const BidderProfiles& profiles);

// Channel-sharing physical model. Temperatures are in kelvin, the
// interference budget tau included; bandwidth fractions are basis points
// (1/100 of a percent) so the strict feasibility comparisons stay exact.
struct SharingModel {
  double ref_power_watts = 1e-12;     // received power from a sharer at ref_distance
  double ref_distance_m = 10.0;
  double path_loss_exponent = 3.0;
  double channel_bandwidth_hz = 8e6;  // one TV channel
  double tau_kelvin = 2000.0;         // interference temperature limit
};

struct SharingParams {
  std::vector<int> bandwidth_bp;  // b_i in basis points, one entry per bidder
  SharingModel model;

  int fraction_bp(int i) const { return bandwidth_bp[static_cast<std::size_t>(i)]; }
};

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K

// A generated or loaded auction instance: everything the engines and the
// oracles consume. Oracles re-read this, never engine internals.
struct Instance {
  std::vector<Node> nodes;  // positions, used for sharing interference distances
  ConflictGraph graph;
  BidderProfiles profiles;
  std::optional<SharingParams> sharing;
  std::uint64_t seed = 0;
};

struct ScenarioConfig {
  int n = 100;
  double area_side = 1000.0;          // metres; derived from density for the named profiles
  std::string density_profile = "uniform";  // uniform | urban | dense-urban
  double interference_range = 30.0;   // metres
  int C = 21;
  double third_party_fraction = 0.0;  // share of nodes converted to third-party WSNs
  double third_party_consumption = 0.7;
  double avg_demand_pct = 60.0;       // mean of per-bidder demand percentages
  Money valuation_min = 0;
  Money valuation_max = 100;
  std::uint64_t rng_seed = 1;

  bool sharing_enabled = false;
  int sharing_b_min_bp = 2000;
  int sharing_b_max_bp = 6000;
  SharingModel sharing_model;
};

}  // namespace verum
