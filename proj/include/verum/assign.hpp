#pragma once

#include <vector>

#include "verum/types.hpp"

namespace verum {

struct SharingParams;  // fwd (types.hpp defines it; keep include light)

// Concrete channel grants. counts()[i] == popcount(masks[i]).
struct Assignment {
  std::vector<ChannelMask> masks;

  int count(int i) const { return mask_count(masks[static_cast<std::size_t>(i)]); }
  bool uses(int i, int k) const { return (masks[static_cast<std::size_t>(i)] >> k) & 1u; }
};

enum class AssignMode { Exclusive, Sharing };

// The channel bidder i's next unit should occupy, given what everyone holds
// so far: among i's available channels that i does not hold and no conflict
// neighbor holds, the one available in the fewest of i's neighbors (ties:
// lowest channel index). Returns -1 when no such channel exists. Both
// auction engines pin awarded units to channels through this rule, which is
// what keeps their outcomes physically realizable round by round.
int pick_fresh_channel(const ConflictGraph& g, const std::vector<ChannelMask>& held, int i);

// Materializes per-bidder win counts into concrete channels.
//
// Winners are processed by descending payment, then ascending id. Each slot
// takes the feasible channel available in the fewest of the winner's
// neighbors (ties: lowest channel index). Exclusive mode treats a channel as
// feasible when no conflict neighbor holds it yet; sharing mode first tries
// those untouched channels, then channels joinable under the usability rule.
// A bounded per-winner backtracking pass (at most C alternatives per slot)
// handles dead ends; if counts still cannot be realized the function throws
// std::runtime_error.
Assignment greedy_assign(const ConflictGraph& g, const std::vector<int>& counts,
                         const std::vector<Money>& payments, AssignMode mode,
                         const SharingParams* sharing = nullptr,
                         const std::vector<Node>* nodes = nullptr);

// Checks: winners got exactly their counts, only available channels were
// granted, and no two conflicting bidders hold the same channel (exclusive
// mode) / every co-channel pair satisfies the sharing constraints (sharing
// mode). Throws std::runtime_error on the first violation.
void validate_assignment(const ConflictGraph& g, const std::vector<int>& counts,
                         const Assignment& assignment, AssignMode mode,
                         const SharingParams* sharing = nullptr,
                         const std::vector<Node>* nodes = nullptr);

}  // namespace verum
