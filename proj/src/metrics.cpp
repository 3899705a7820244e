#include "verum/metrics.hpp"

namespace verum {

// Mean, over bidders that have any channel available, of the share of their
// channels that ended up in use somewhere in their closed neighborhood.
double spectrum_utilization(const ConflictGraph& g, const Assignment& assignment) {
  double sum = 0.0;
  int counted = 0;
  for (int i = 0; i < g.n; ++i) {
    ChannelMask mine = g.avail[static_cast<std::size_t>(i)];
    int xi = mask_count(mine);
    if (xi == 0) continue;
    ChannelMask used = assignment.masks[static_cast<std::size_t>(i)];
    for (int j : g.neighbors(i)) used |= assignment.masks[static_cast<std::size_t>(j)];
    sum += 100.0 * mask_count(mine & used) / xi;
    ++counted;
  }
  return counted == 0 ? 0.0 : sum / counted;
}

double winner_percentage(const std::vector<int>& counts, int bidder_count) {
  if (bidder_count <= 0) return 0.0;
  int winners = 0;
  for (int c : counts)
    if (c > 0) ++winners;
  return 100.0 * winners / bidder_count;
}

int count_bidders(const ConflictGraph& g, const BidderProfiles& profiles) {
  int count = 0;
  for (int i = 0; i < g.n; ++i)
    if (profiles.demand_cap(i) >= 1 && g.available_count(i) > 0) ++count;
  return count;
}

}  // namespace verum
