#pragma once

#include <functional>
#include <vector>

#include "verum/assign.hpp"
#include "verum/types.hpp"

namespace verum {

struct AuctionConfig {
  Money reserve_price = 10;
  Money step_size = 1;
};

// One clinch event: `count` channels secured by `bidder` at round price
// `price`. Payments never change once recorded.
struct ClinchEvent {
  int bidder = 0;
  int count = 0;
  Money price = 0;
};

struct RoundRecord {
  int round = 0;  // 1-based
  Money price = 0;
  std::vector<int> demands;          // per-bidder demand at this price
  std::vector<ClinchEvent> clinches; // events of this round, ascending bidder id
};

using RoundObserver = std::function<void(const RoundRecord&)>;

struct Outcome {
  std::vector<int> counts;      // y_i: channels won
  std::vector<Money> payments;  // S_i
  Assignment assignment;        // concrete channels, committed at clinch time
  Money revenue = 0;
  int rounds = 0;               // L: price announcements until demand vanished
  std::vector<ClinchEvent> ledger;
};

// Channels available at i but at none of i's neighbors that still demand
// anything at the current prices. Zero-demand neighbors no longer compete,
// so their availability does not block.
int count_exclusive_channels(const ConflictGraph& g, const std::vector<int>& demands, int i);

// Ascending multi-unit clinching auction with exclusive channel use.
//
// Each round announces price p_t, collects demands D_i(p_t) (strictly
// positive marginal valuations above p_t), and lets every bidder clinch up to
//
//   min(D_i(p_t), x_i, max(0, x_i - sum_{j in N_i} D_j(p_t) + E_i(p_t)))
//
// cumulative channels, where E_i is count_exclusive_channels. Every awarded
// unit is additionally pinned to a concrete channel no conflict neighbor has
// committed to yet (rarest-in-the-neighborhood first); when the residual
// arithmetic above outruns what the channels physically carry, the unmatched
// units are not awarded and not charged, which keeps the outcome realizable
// and the revenue within the brute-force optimum. Cumulative clinches never
// decrease (earlier wins are never revoked). All bidders are evaluated
// synchronously against start-of-round demands; the ledger lists events in
// ascending bidder id within a round. The auction stops at the first price
// where no bidder demands anything.
Outcome run_exclusive_auction(const ConflictGraph& g, const BidderProfiles& profiles,
                              const AuctionConfig& cfg, const RoundObserver& observer = {});

}  // namespace verum
