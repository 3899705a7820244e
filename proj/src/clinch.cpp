#include "verum/clinch.hpp"

#include <algorithm>
#include <stdexcept>

#include "verum/bidder.hpp"

namespace verum {

int count_exclusive_channels(const ConflictGraph& g, const std::vector<int>& demands, int i) {
  ChannelMask contested = 0;
  for (int j : g.neighbors(i)) {
    if (demands[static_cast<std::size_t>(j)] > 0) contested |= g.avail[static_cast<std::size_t>(j)];
  }
  return mask_count(g.avail[static_cast<std::size_t>(i)] & ~contested);
}

Outcome run_exclusive_auction(const ConflictGraph& g, const BidderProfiles& profiles,
                              const AuctionConfig& cfg, const RoundObserver& observer) {
  if (profiles.size() != g.n) throw std::invalid_argument("auction: profile/graph size mismatch");
  if (cfg.step_size <= 0) throw std::invalid_argument("auction: step_size must be positive");
  if (cfg.reserve_price < 0) throw std::invalid_argument("auction: negative reserve price");

  const int n = g.n;
  Outcome out;
  out.counts.assign(static_cast<std::size_t>(n), 0);
  out.payments.assign(static_cast<std::size_t>(n), 0);

  std::vector<int> demands(static_cast<std::size_t>(n), 0);
  std::vector<int> cumulative(static_cast<std::size_t>(n), 0);
  std::vector<ChannelMask> held(static_cast<std::size_t>(n), 0);

  const Money top = profiles.max_value();
  // Demands must all hit zero by the first price >= the highest valuation;
  // the bound below is a belt-and-braces guard against infinite loops.
  const Money price_limit = top + cfg.step_size;

  Money price = cfg.reserve_price;
  for (int round = 1;; ++round, price += cfg.step_size) {
    long total_demand = 0;
    for (int i = 0; i < n; ++i) {
      demands[static_cast<std::size_t>(i)] = demand_at_price(profiles.of(i), price);
      total_demand += demands[static_cast<std::size_t>(i)];
    }

    out.rounds = round;
    if (total_demand == 0) {
      if (observer) observer(RoundRecord{round, price, demands, {}});
      break;  // nobody wants anything at this price: the auction is over
    }

    RoundRecord record;
    if (observer) record = RoundRecord{round, price, demands, {}};

    // Synchronous clinching pass against start-of-round demands. Each
    // bidder's clinch target depends only on the other bidders' demand
    // curves, never on its own bid, which is what makes truthful bidding a
    // dominant strategy. The residual-supply arithmetic alone can overshoot
    // what the channels physically carry, so every awarded unit must also be
    // pinned to a concrete conflict-free channel right here: a unit that
    // cannot be placed is not awarded and not charged. Commitments are
    // permanent, and exclusive holdings only ever grow, so a unit blocked
    // now would stay blocked at every later price -- deferring it could
    // never help the bidder or the seller.
    for (int i = 0; i < n; ++i) {
      int di = demands[static_cast<std::size_t>(i)];
      if (di <= cumulative[static_cast<std::size_t>(i)]) continue;
      long neighbor_demand = 0;
      for (int j : g.neighbors(i)) neighbor_demand += demands[static_cast<std::size_t>(j)];
      int xi = g.available_count(i);
      long supply = xi - neighbor_demand + count_exclusive_channels(g, demands, i);
      int target = static_cast<int>(std::min<long>({di, static_cast<long>(xi), std::max<long>(0, supply)}));
      int placed = 0;
      while (cumulative[static_cast<std::size_t>(i)] + placed < target) {
        int k = pick_fresh_channel(g, held, i);
        if (k < 0) break;
        held[static_cast<std::size_t>(i)] |= ChannelMask{1} << k;
        ++placed;
      }
      if (placed > 0) {
        cumulative[static_cast<std::size_t>(i)] += placed;
        out.ledger.push_back({i, placed, price});
        out.payments[static_cast<std::size_t>(i)] += price * placed;
        if (observer) record.clinches.push_back({i, placed, price});
      }
    }

    if (observer) observer(record);
    if (price > price_limit) break;  // unreachable when profiles are valid
  }

  out.counts = cumulative;
  for (Money s : out.payments) out.revenue += s;
  // The engine committed every awarded unit to a channel as it was clinched,
  // so the conflict-free assignment is already in hand.
  out.assignment.masks = std::move(held);
  return out;
}

}  // namespace verum
