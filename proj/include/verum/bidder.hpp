#pragma once

#include "verum/types.hpp"

namespace verum {

// Channels wanted at price p: the count of marginal valuations strictly
// greater than p. Weakly decreasing in p; drops exactly at the valuation.
inline int demand_at_price(const ValuationVector& values, Money p) {
  int d = 0;
  for (Money v : values) {
    if (v > p)
      ++d;
    else
      break;  // values are sorted weakly decreasing
  }
  return d;
}

inline int demand_at_price(const BidderProfiles& profiles, int bidder, Money p) {
  return demand_at_price(profiles.of(bidder), p);
}

// Total value bidder i places on receiving `count` channels (channels are
// substitutes, so only the count matters).
inline Money value_of_count(const ValuationVector& values, int count) {
  Money total = 0;
  int take = count < static_cast<int>(values.size()) ? count : static_cast<int>(values.size());
  for (int j = 0; j < take; ++j) total += values[static_cast<std::size_t>(j)];
  return total;
}

}  // namespace verum
