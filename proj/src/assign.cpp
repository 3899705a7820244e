#include "verum/assign.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "verum/sharing.hpp"

namespace verum {
namespace {

// Static placement metric: in how many of i's neighbors channel k is
// available at all. Picking the rarest channel first leaves more options
// open for everyone else in the neighborhood.
int neighbor_availability(const ConflictGraph& g, int i, int k) {
  int c = 0;
  for (int j : g.neighbors(i))
    if (g.available(j, k)) ++c;
  return c;
}

struct Placer {
  const ConflictGraph& g;
  AssignMode mode;
  const SharingParams* sharing;
  const std::vector<Node>* nodes;
  Assignment& result;

  bool neighbor_holds(int i, int k) const {
    for (int j : g.neighbors(i))
      if (result.uses(j, k)) return true;
    return false;
  }

  // Feasible channels for one more grant to bidder i, best first. Channels
  // untouched in the neighborhood are preferred (ranked by the availability
  // metric); sharing mode appends joinable occupied channels after them.
  std::vector<int> ranked_candidates(int i) const {
    std::vector<std::pair<int, int>> fresh;  // (metric, channel)
    std::vector<std::pair<int, int>> joinable;
    for (int k = 0; k < g.channels; ++k) {
      if (!g.available(i, k) || result.uses(i, k)) continue;
      if (!neighbor_holds(i, k)) {
        fresh.emplace_back(neighbor_availability(g, i, k), k);
      } else if (mode == AssignMode::Sharing &&
                 can_share(i, k, g, result.masks, *sharing, *nodes)) {
        joinable.emplace_back(neighbor_availability(g, i, k), k);
      }
    }
    std::sort(fresh.begin(), fresh.end());
    std::sort(joinable.begin(), joinable.end());
    std::vector<int> ordered;
    ordered.reserve(fresh.size() + joinable.size());
    for (auto& [m, k] : fresh) ordered.push_back(k);
    for (auto& [m, k] : joinable) ordered.push_back(k);
    return ordered;
  }

  // Depth-first over this winner's slots with at most C alternatives per
  // slot; returns false when the count cannot be realized.
  bool place(int i, int remaining) {
    if (remaining == 0) return true;
    for (int k : ranked_candidates(i)) {
      result.masks[static_cast<std::size_t>(i)] |= ChannelMask{1} << k;
      if (place(i, remaining - 1)) return true;
      result.masks[static_cast<std::size_t>(i)] &= ~(ChannelMask{1} << k);
    }
    return false;
  }

  // A later winner can be boxed in by an earlier winner's channel choice even
  // when a joint placement exists, so before giving up we retry with
  // backtracking across winners. Still at most C alternatives per slot; a
  // work budget keeps the worst case bounded. Candidate lists are stable
  // while one winner fills consecutive slots (only that winner's own mask
  // changes), so each list is computed once per winner activation and
  // de-duplicated by resuming from the previous pick's position.
  bool assign_all(const std::vector<int>& order, const std::vector<int>& counts,
                  std::size_t idx, std::uint64_t& budget) {
    if (idx == order.size()) return true;
    int i = order[idx];
    int want = counts[static_cast<std::size_t>(i)];
    if (want == 0) return assign_all(order, counts, idx + 1, budget);
    std::vector<int> cands = ranked_candidates(i);
    return fill_slots(order, counts, idx, want, cands, 0, budget);
  }

  bool fill_slots(const std::vector<int>& order, const std::vector<int>& counts,
                  std::size_t idx, int remaining, const std::vector<int>& cands,
                  std::size_t from, std::uint64_t& budget) {
    if (remaining == 0) return assign_all(order, counts, idx + 1, budget);
    int i = order[idx];
    for (std::size_t c = from; c + static_cast<std::size_t>(remaining) <= cands.size(); ++c) {
      if (budget == 0) return false;
      --budget;
      int k = cands[c];
      result.masks[static_cast<std::size_t>(i)] |= ChannelMask{1} << k;
      if (fill_slots(order, counts, idx, remaining - 1, cands, c + 1, budget)) return true;
      result.masks[static_cast<std::size_t>(i)] &= ~(ChannelMask{1} << k);
    }
    return false;
  }
};

constexpr std::uint64_t kAssignFallbackBudget = std::uint64_t{1} << 18;

}  // namespace

int pick_fresh_channel(const ConflictGraph& g, const std::vector<ChannelMask>& held, int i) {
  int best = -1;
  int best_metric = 0;
  for (int k = 0; k < g.channels; ++k) {
    if (!g.available(i, k)) continue;
    const ChannelMask bit = ChannelMask{1} << k;
    if (held[static_cast<std::size_t>(i)] & bit) continue;
    bool taken = false;
    for (int j : g.neighbors(i)) {
      if (held[static_cast<std::size_t>(j)] & bit) {
        taken = true;
        break;
      }
    }
    if (taken) continue;
    const int metric = neighbor_availability(g, i, k);
    if (best < 0 || metric < best_metric) {
      best = k;
      best_metric = metric;
    }
  }
  return best;
}

Assignment greedy_assign(const ConflictGraph& g, const std::vector<int>& counts,
                         const std::vector<Money>& payments, AssignMode mode,
                         const SharingParams* sharing, const std::vector<Node>* nodes) {
  if (mode == AssignMode::Sharing && (sharing == nullptr || nodes == nullptr))
    throw std::invalid_argument("greedy_assign: sharing mode needs sharing params and positions");

  Assignment result;
  result.masks.assign(static_cast<std::size_t>(g.n), 0);

  std::vector<int> order(static_cast<std::size_t>(g.n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (payments[static_cast<std::size_t>(a)] != payments[static_cast<std::size_t>(b)])
      return payments[static_cast<std::size_t>(a)] > payments[static_cast<std::size_t>(b)];
    return a < b;
  });

  for (int i = 0; i < g.n; ++i) {
    if (counts[static_cast<std::size_t>(i)] > g.available_count(i))
      throw std::runtime_error("greedy_assign: count exceeds availability for bidder " +
                               std::to_string(i));
  }

  Placer placer{g, mode, sharing, nodes, result};
  bool greedy_ok = true;
  for (int i : order) {
    int want = counts[static_cast<std::size_t>(i)];
    if (want == 0) continue;
    if (!placer.place(i, want)) {
      greedy_ok = false;
      break;
    }
  }
  if (greedy_ok) return result;

  result.masks.assign(static_cast<std::size_t>(g.n), 0);
  std::uint64_t budget = kAssignFallbackBudget;
  if (!placer.assign_all(order, counts, 0, budget))
    throw std::runtime_error("greedy_assign: no conflict-free placement found");
  return result;
}

void validate_assignment(const ConflictGraph& g, const std::vector<int>& counts,
                         const Assignment& assignment, AssignMode mode,
                         const SharingParams* sharing, const std::vector<Node>* nodes) {
  for (int i = 0; i < g.n; ++i) {
    ChannelMask m = assignment.masks[static_cast<std::size_t>(i)];
    if (mask_count(m) != counts[static_cast<std::size_t>(i)])
      throw std::runtime_error("assignment: count mismatch at bidder " + std::to_string(i));
    if (m & ~g.avail[static_cast<std::size_t>(i)])
      throw std::runtime_error("assignment: unavailable channel granted to bidder " +
                               std::to_string(i));
  }
  for (int i = 0; i < g.n; ++i) {
    for (int j : g.neighbors(i)) {
      if (j < i) continue;
      ChannelMask shared_mask =
          assignment.masks[static_cast<std::size_t>(i)] & assignment.masks[static_cast<std::size_t>(j)];
      if (shared_mask == 0) continue;
      if (mode == AssignMode::Exclusive)
        throw std::runtime_error("assignment: conflicting bidders share a channel");
      // Sharing mode: every user of a channel must tolerate its co-users.
      for (int k = 0; k < g.channels; ++k) {
        if (!((shared_mask >> k) & 1u)) continue;
        // Check the constraint from both ends against everything committed.
        for (int end : {i, j}) {
          std::vector<ChannelMask> others = assignment.masks;
          others[static_cast<std::size_t>(end)] &= ~(ChannelMask{1} << k);
          if (!channel_usability(end, k, g, others, *sharing, *nodes))
            throw std::runtime_error("assignment: sharing constraints violated on channel " +
                                     std::to_string(k));
        }
      }
    }
  }
}

}  // namespace verum
