#pragma once

#include "verum/assign.hpp"
#include "verum/types.hpp"

namespace verum {

// Mean over bidders with x_i > 0 of the percentage of their available
// channels in use somewhere in their closed neighborhood (themselves or a
// conflict neighbor). 0 when nothing is assigned or nobody has channels.
double spectrum_utilization(const ConflictGraph& g, const Assignment& assignment);

// 100 * winners / bidder_count; 0 when bidder_count is 0.
double winner_percentage(const std::vector<int>& counts, int bidder_count);

// Bidders are nodes that actually demand something: non-empty valuation
// vector and at least one available channel.
int count_bidders(const ConflictGraph& g, const BidderProfiles& profiles);

}  // namespace verum
