#include "verum/types.hpp"

#include <algorithm>

namespace verum {

void sort_adjacency(ConflictGraph& g) {
  for (auto& a : g.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
}

void validate(const ConflictGraph& g) {
  if (g.n < 0) throw std::invalid_argument("graph: negative node count");
  if (g.channels < 0 || g.channels > kMaxChannels)
    throw std::invalid_argument("graph: channel count out of range");
  if (static_cast<int>(g.adj.size()) != g.n || static_cast<int>(g.avail.size()) != g.n)
    throw std::invalid_argument("graph: adjacency/availability size mismatch");
  const ChannelMask beyond =
      g.channels == kMaxChannels ? 0 : ~((ChannelMask{1} << g.channels) - 1);
  for (int i = 0; i < g.n; ++i) {
    if (g.avail[static_cast<std::size_t>(i)] & beyond)
      throw std::invalid_argument("graph: availability bit beyond channel count");
    for (int j : g.neighbors(i)) {
      if (j < 0 || j >= g.n) throw std::invalid_argument("graph: neighbor out of range");
      if (j == i) throw std::invalid_argument("graph: self loop");
      if (!g.has_edge(j, i)) throw std::invalid_argument("graph: asymmetric edge");
    }
  }
}

void validate(const BidderProfiles& profiles) {
  for (const auto& v : profiles.valuations) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] < 0) throw std::invalid_argument("profiles: negative valuation");
      if (j > 0 && v[j] > v[j - 1])
        throw std::invalid_argument("profiles: valuations not weakly decreasing");
    }
  }
}

}  // namespace verum
