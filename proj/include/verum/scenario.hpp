#pragma once

#include <cstdint>
#include <vector>

#include "verum/types.hpp"

namespace verum {

// Node placement. "uniform" scatters n points uniformly over a square of the
// configured side; "urban" does the same at 2435 homes/km^2 (side derived from
// n); "dense-urban" uses a clustered Matern-style process at 5456 homes/km^2.
std::vector<Node> place_nodes(const ScenarioConfig& cfg, std::uint64_t seed);

// Edge iff euclidean distance <= range (inclusive). Availability starts as
// all `channels` bits set for every node.
ConflictGraph build_conflict_graph(const std::vector<Node>& nodes, double range, int channels);

// Third-party WSN heterogeneity: `third_party_ids` are removed from the bidder
// set; each of them blanks floor(consumption * C) randomly chosen channels at
// itself and at every conflict neighbor. Returns the induced graph over the
// surviving bidders (re-indexed densely) plus the surviving node list.
struct ThirdPartyResult {
  ConflictGraph graph;
  std::vector<Node> nodes;           // surviving nodes, ids re-assigned 0..m-1
  std::vector<int> kept_original;    // original index of each surviving node
};
ThirdPartyResult apply_third_party_at(const ConflictGraph& g, const std::vector<Node>& nodes,
                                      const std::vector<int>& third_party_ids,
                                      double consumption, std::uint64_t seed);

// Random third-party selection: round(fraction * n) nodes drawn uniformly.
ThirdPartyResult apply_third_party(const ConflictGraph& g, const std::vector<Node>& nodes,
                                   double fraction, double consumption, std::uint64_t seed);

// Demands: D_i = round-half-up(pct_i * x_i / 100) where the pct_i draw is
// antithetic around avg_demand_pct, so mean(pct_i) lands on the target.
// Valuations: D_i integers uniform in [valuation_min, valuation_max], sorted
// descending. Throws if every bidder has x_i = 0.
BidderProfiles generate_demands_valuations(const ConflictGraph& g, const ScenarioConfig& cfg,
                                           std::uint64_t seed);

// Per-bidder bandwidth fractions for the sharing variant, uniform over
// [b_min_bp, b_max_bp] basis points.
SharingParams generate_sharing_params(int n, const ScenarioConfig& cfg, std::uint64_t seed);

// Full pipeline: place -> graph -> third party -> demands/valuations
// (-> sharing params when enabled). Deterministic in cfg.rng_seed.
Instance generate_instance(const ScenarioConfig& cfg);

void validate(const ScenarioConfig& cfg);

}  // namespace verum
