#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "verum/assign.hpp"
#include "verum/clinch.hpp"
#include "verum/types.hpp"

namespace verum {

// Brute-force benchmarks. All of them work from the instance alone (graph,
// availabilities, valuation vectors) and never consult engine internals.
// Enumeration is guarded: more than kOracleOpLimit elementary steps throws
// std::runtime_error, so these stay desk-scale by construction.
inline constexpr std::uint64_t kOracleOpLimit = 1u << 24;

struct OracleResult {
  Money best_value = 0;            // max revenue or max welfare, per mode
  std::vector<int> best_counts;    // y_i of one optimal allocation
  Assignment best_assignment;      // a concrete realization of best_counts
  std::uint64_t enumerated = 0;    // elementary enumeration steps spent
  std::string pricing_note;        // how candidate revenue was priced (revenue modes)
};

// Revenue-maximal allocation under exclusive-use constraints (each channel
// at most one user per conflict neighborhood, only available channels).
//
// Candidate allocations are priced Vickrey-style, restricted to the conflict
// neighborhood: the m-th channel of bidder i is priced at the first grid
// price (reserve, reserve+step, ...) where the residual local supply
// x_i - sum_{j in N_i} D_j(p) + E_i(p) reaches m. A bidder can only be
// allocated units whose price stays below its own marginal valuation, since
// no ascending auction can sell above the buyer's value.
OracleResult optimal_revenue_exclusive(const ConflictGraph& g, const BidderProfiles& profiles,
                                       const AuctionConfig& cfg);

// Same search, sharing constraint set: a channel's user set is feasible when
// every member tolerates the others (strict bandwidth headroom and
// interference temperature below tau; singleton use is always allowed).
// Candidate revenue prices each unit at shared_price(grid price, b_i).
OracleResult optimal_revenue_sharing(const ConflictGraph& g, const BidderProfiles& profiles,
                                     const AuctionConfig& cfg, const SharingParams& sharing,
                                     const std::vector<Node>& nodes);

// Welfare-maximal allocation: maximizes the sum over bidders of the top-y_i
// marginal valuations over every conflict-feasible count vector
// (y_i <= min(D_i, x_i), realizable by per-channel independent sets).
OracleResult optimal_welfare(const ConflictGraph& g, const BidderProfiles& profiles);

// Classical multi-unit Vickrey outcome for a clique with homogeneous
// availability: top-C marginal bids win (the reserve acts as C auctioneer
// bids) and winner i pays the top-M_i losing bids of the others. Used as the
// independent reference for the clique-equivalence check.
struct VickreyOutcome {
  std::vector<int> counts;
  std::vector<Money> payments;
};
VickreyOutcome vickrey_clique_reference(const BidderProfiles& profiles, int channels,
                                        Money reserve);

// Exhaustive single-bidder deviation search on the exclusive engine. Tries
// every weakly decreasing misreport over {0..value_ceiling} of the bidder's
// true demand length and reports the best utility achieved, where utility is
// measured against the true valuations.
struct DeviationReport {
  Money truthful_utility = 0;
  Money best_utility = 0;
  ValuationVector best_vector;   // a deviation achieving best_utility
  std::uint64_t tried = 0;
};
DeviationReport enumerate_deviations(const ConflictGraph& g, const BidderProfiles& profiles,
                                     const AuctionConfig& cfg, int bidder, Money value_ceiling);

}  // namespace verum
