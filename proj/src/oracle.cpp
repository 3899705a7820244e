#include "verum/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "verum/bidder.hpp"
#include "verum/sharing.hpp"

namespace verum {
namespace {

constexpr int kMaxOracleBidders = 10;  // packed 6-bit counts in a 64-bit state

// Unit-price schedule per bidder: entry m-1 is the first grid price at which
// the bidder's residual local supply, under everyone bidding truthfully,
// reaches m. Residual supply is x_i minus the neighbors' total demand plus
// the channels no demanding neighbor can use, mirroring the clinching
// engine's rule. This is the opportunity-cost price an ascending clinching
// process charges for the m-th unit, and it never depends on the bidder's
// own reports.
struct PriceSchedule {
  std::vector<std::vector<Money>> unit_price;  // [i][m-1]
  std::vector<int> sellable;                   // units the bidder still wants at those prices
};

PriceSchedule crossing_prices(const ConflictGraph& g, const BidderProfiles& profiles,
                              const AuctionConfig& cfg) {
  const int n = g.n;
  PriceSchedule out;
  out.unit_price.resize(static_cast<std::size_t>(n));
  out.sellable.assign(static_cast<std::size_t>(n), 0);

  std::vector<int> limit(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    limit[static_cast<std::size_t>(i)] =
        std::min(g.available_count(i), static_cast<int>(profiles.of(i).size()));
    out.unit_price[static_cast<std::size_t>(i)].assign(
        static_cast<std::size_t>(limit[static_cast<std::size_t>(i)]),
        std::numeric_limits<Money>::max());
  }

  std::vector<int> demands(static_cast<std::size_t>(n), 0);
  const Money price_limit = profiles.max_value() + cfg.step_size;
  for (Money p = cfg.reserve_price;; p += cfg.step_size) {
    long total = 0;
    for (int i = 0; i < n; ++i) {
      demands[static_cast<std::size_t>(i)] = demand_at_price(profiles.of(i), p);
      total += demands[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < n; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      long neighbor_demand = 0;
      for (int j : g.neighbors(i)) neighbor_demand += demands[static_cast<std::size_t>(j)];
      long supply =
          g.available_count(i) - neighbor_demand + count_exclusive_channels(g, demands, i);
      for (int m = 1; m <= limit[iu]; ++m) {
        if (out.unit_price[iu][static_cast<std::size_t>(m - 1)] !=
            std::numeric_limits<Money>::max())
          continue;
        if (supply >= m) out.unit_price[iu][static_cast<std::size_t>(m - 1)] = p;
      }
    }
    if (total == 0 || p > price_limit) break;
  }

  // A unit is sellable only while the bidder still demands it at its price.
  for (int i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    int m = 0;
    while (m < limit[iu] &&
           out.unit_price[iu][static_cast<std::size_t>(m)] != std::numeric_limits<Money>::max() &&
           profiles.of(i)[static_cast<std::size_t>(m)] >
               out.unit_price[iu][static_cast<std::size_t>(m)])
      ++m;
    out.sellable[iu] = m;
  }
  return out;
}

// Exhaustive search over conflict-feasible count vectors, one channel at a
// time. The per-channel candidate user sets are supplied by the caller (they
// encode exclusive vs sharing feasibility); the objective is any per-bidder
// function of the unit count. States are memoized per channel: the value of a
// partial state depends only on the counts, so a revisited (channel, counts)
// pair can never improve on its first full exploration.
struct CountSearch {
  const ConflictGraph& g;
  const std::vector<std::vector<std::uint32_t>>& channel_sets;  // per channel
  const std::vector<std::vector<Money>>& gain;                  // [i][c] value of c units
  const std::vector<int>& cap;

  std::uint64_t ops = 0;
  Money best_value = 0;
  std::vector<std::uint32_t> chosen;
  std::vector<std::uint32_t> best_chosen;
  std::vector<int> counts;
  std::vector<std::unordered_set<std::uint64_t>> seen;

  explicit CountSearch(const ConflictGraph& graph,
                       const std::vector<std::vector<std::uint32_t>>& sets,
                       const std::vector<std::vector<Money>>& gains, const std::vector<int>& caps)
      : g(graph), channel_sets(sets), gain(gains), cap(caps) {
    chosen.assign(static_cast<std::size_t>(g.channels), 0);
    best_chosen = chosen;
    counts.assign(static_cast<std::size_t>(g.n), 0);
    seen.resize(static_cast<std::size_t>(g.channels));
  }

  void bump_ops() {
    if (++ops > kOracleOpLimit)
      throw std::runtime_error("oracle: enumeration limit exceeded, instance too large");
  }

  Money value_of_counts() const {
    Money v = 0;
    for (int i = 0; i < g.n; ++i)
      v += gain[static_cast<std::size_t>(i)][static_cast<std::size_t>(counts[static_cast<std::size_t>(i)])];
    return v;
  }

  Money remaining_upside() const {
    Money v = 0;
    for (int i = 0; i < g.n; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      v += gain[iu][static_cast<std::size_t>(cap[iu])] -
           gain[iu][static_cast<std::size_t>(counts[iu])];
    }
    return v;
  }

  std::uint64_t packed_state() const {
    std::uint64_t s = 0;
    for (int i = 0; i < g.n; ++i)
      s = (s << 6) | static_cast<std::uint64_t>(counts[static_cast<std::size_t>(i)]);
    return s;
  }

  void run() {
    best_value = value_of_counts();  // empty allocation is always feasible
    best_chosen.assign(static_cast<std::size_t>(g.channels), 0);
    descend(0);
  }

  void descend(int k) {
    bump_ops();
    Money here = value_of_counts();
    if (here > best_value) {
      best_value = here;
      best_chosen = chosen;
    }
    if (k == g.channels) return;
    if (here + remaining_upside() <= best_value) return;  // cannot improve
    if (!seen[static_cast<std::size_t>(k)].insert(packed_state()).second) return;

    for (std::uint32_t set : channel_sets[static_cast<std::size_t>(k)]) {
      bump_ops();
      bool usable = true;
      for (int i = 0; i < g.n && usable; ++i)
        if ((set >> i) & 1u)
          if (counts[static_cast<std::size_t>(i)] >= cap[static_cast<std::size_t>(i)]) usable = false;
      if (!usable) continue;
      for (int i = 0; i < g.n; ++i)
        if ((set >> i) & 1u) ++counts[static_cast<std::size_t>(i)];
      chosen[static_cast<std::size_t>(k)] = set;
      descend(k + 1);
      chosen[static_cast<std::size_t>(k)] = 0;
      for (int i = 0; i < g.n; ++i)
        if ((set >> i) & 1u) --counts[static_cast<std::size_t>(i)];
    }
  }
};

void check_oracle_scale(const ConflictGraph& g) {
  if (g.n > kMaxOracleBidders)
    throw std::runtime_error("oracle: too many bidders for exhaustive search");
}

// All subsets of bidders that may legally use one channel together.
std::vector<std::vector<std::uint32_t>> exclusive_channel_sets(const ConflictGraph& g) {
  check_oracle_scale(g);
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(g.n), 0);
  for (int i = 0; i < g.n; ++i)
    for (int j : g.neighbors(i)) adj[static_cast<std::size_t>(i)] |= 1u << j;

  std::vector<std::vector<std::uint32_t>> sets(static_cast<std::size_t>(g.channels));
  for (int k = 0; k < g.channels; ++k) {
    std::uint32_t havers = 0;
    for (int i = 0; i < g.n; ++i)
      if (g.available(i, k)) havers |= 1u << i;
    // Every subset of the havers, kept when it is an independent set. The
    // empty set (skip the channel) is always present.
    for (std::uint32_t s = havers;; s = (s - 1) & havers) {
      bool ok = true;
      for (int i = 0; i < g.n && ok; ++i)
        if ((s >> i) & 1u)
          if (adj[static_cast<std::size_t>(i)] & s) ok = false;
      if (ok) sets[static_cast<std::size_t>(k)].push_back(s);
      if (s == 0) break;
    }
    std::sort(sets[static_cast<std::size_t>(k)].begin(), sets[static_cast<std::size_t>(k)].end());
  }
  return sets;
}

std::vector<std::vector<std::uint32_t>> sharing_channel_sets(const ConflictGraph& g,
                                                             const SharingParams& sharing,
                                                             const std::vector<Node>& nodes) {
  check_oracle_scale(g);
  std::vector<std::vector<std::uint32_t>> sets(static_cast<std::size_t>(g.channels));
  for (int k = 0; k < g.channels; ++k) {
    std::uint32_t havers = 0;
    for (int i = 0; i < g.n; ++i)
      if (g.available(i, k)) havers |= 1u << i;
    for (std::uint32_t s = havers;; s = (s - 1) & havers) {
      // Feasible when every member either has no conflicting co-user (fresh,
      // exclusive-style use) or tolerates all of its conflicting co-users.
      bool ok = true;
      for (int i = 0; i < g.n && ok; ++i) {
        if (!((s >> i) & 1u)) continue;
        std::vector<int> sharers;
        int bp_sum = 0;
        for (int j : g.neighbors(i)) {
          if ((s >> j) & 1u) {
            sharers.push_back(j);
            bp_sum += sharing.fraction_bp(j);
          }
        }
        if (sharers.empty()) continue;
        if (bp_sum >= 10000 - sharing.fraction_bp(i)) ok = false;
        if (ok && interference_temperature(i, k, sharers, g, sharing, nodes) >=
                      sharing.model.tau_kelvin)
          ok = false;
      }
      if (ok) sets[static_cast<std::size_t>(k)].push_back(s);
      if (s == 0) break;
    }
    std::sort(sets[static_cast<std::size_t>(k)].begin(), sets[static_cast<std::size_t>(k)].end());
  }
  return sets;
}

OracleResult run_count_search(const ConflictGraph& g,
                              const std::vector<std::vector<std::uint32_t>>& sets,
                              const std::vector<std::vector<Money>>& gain,
                              const std::vector<int>& cap) {
  check_oracle_scale(g);
  CountSearch search(g, sets, gain, cap);
  search.run();

  OracleResult result;
  result.best_value = search.best_value;
  result.enumerated = search.ops;
  result.best_assignment.masks.assign(static_cast<std::size_t>(g.n), 0);
  for (int k = 0; k < g.channels; ++k) {
    std::uint32_t set = search.best_chosen[static_cast<std::size_t>(k)];
    for (int i = 0; i < g.n; ++i)
      if ((set >> i) & 1u)
        result.best_assignment.masks[static_cast<std::size_t>(i)] |= ChannelMask{1} << k;
  }
  result.best_counts.assign(static_cast<std::size_t>(g.n), 0);
  for (int i = 0; i < g.n; ++i)
    result.best_counts[static_cast<std::size_t>(i)] =
        mask_count(result.best_assignment.masks[static_cast<std::size_t>(i)]);
  return result;
}

const char* kCrossingPricingNote =
    "unit m of bidder i priced at the first grid price where the local residual supply "
    "x_i - D_-i(p) + E_i(p) under truthful demands reaches m; bidders sell only units "
    "they still demand at that price";

}  // namespace

OracleResult optimal_revenue_exclusive(const ConflictGraph& g, const BidderProfiles& profiles,
                                       const AuctionConfig& cfg) {
  validate(g);
  validate(profiles);
  PriceSchedule schedule = crossing_prices(g, profiles, cfg);
  std::vector<std::vector<Money>> gain(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    gain[iu].assign(static_cast<std::size_t>(schedule.sellable[iu]) + 1, 0);
    for (int c = 1; c <= schedule.sellable[iu]; ++c)
      gain[iu][static_cast<std::size_t>(c)] =
          gain[iu][static_cast<std::size_t>(c - 1)] +
          schedule.unit_price[iu][static_cast<std::size_t>(c - 1)];
  }
  OracleResult result = run_count_search(g, exclusive_channel_sets(g), gain, schedule.sellable);
  result.pricing_note = kCrossingPricingNote;
  return result;
}

OracleResult optimal_revenue_sharing(const ConflictGraph& g, const BidderProfiles& profiles,
                                     const AuctionConfig& cfg, const SharingParams& sharing,
                                     const std::vector<Node>& nodes) {
  validate(g);
  validate(profiles);
  if (static_cast<int>(nodes.size()) != g.n)
    throw std::invalid_argument("oracle: node positions required for sharing");
  PriceSchedule schedule = crossing_prices(g, profiles, cfg);
  std::vector<std::vector<Money>> gain(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    gain[iu].assign(static_cast<std::size_t>(schedule.sellable[iu]) + 1, 0);
    for (int c = 1; c <= schedule.sellable[iu]; ++c)
      gain[iu][static_cast<std::size_t>(c)] =
          gain[iu][static_cast<std::size_t>(c - 1)] +
          shared_price(schedule.unit_price[iu][static_cast<std::size_t>(c - 1)],
                       sharing.fraction_bp(i));
  }
  OracleResult result =
      run_count_search(g, sharing_channel_sets(g, sharing, nodes), gain, schedule.sellable);
  result.pricing_note = std::string(kCrossingPricingNote) + "; unit prices scaled by b_i";
  return result;
}

OracleResult optimal_welfare(const ConflictGraph& g, const BidderProfiles& profiles) {
  validate(g);
  validate(profiles);
  std::vector<int> cap(static_cast<std::size_t>(g.n));
  std::vector<std::vector<Money>> gain(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    cap[iu] = std::min(g.available_count(i), static_cast<int>(profiles.of(i).size()));
    gain[iu].assign(static_cast<std::size_t>(cap[iu]) + 1, 0);
    for (int c = 1; c <= cap[iu]; ++c)
      gain[iu][static_cast<std::size_t>(c)] = value_of_count(profiles.of(i), c);
  }
  return run_count_search(g, exclusive_channel_sets(g), gain, cap);
}

VickreyOutcome vickrey_clique_reference(const BidderProfiles& profiles, int channels,
                                        Money reserve) {
  const int n = profiles.size();
  struct Bid {
    Money value;
    int bidder;  // n means an auctioneer reserve bid
  };
  std::vector<Bid> pool;
  for (int i = 0; i < n; ++i)
    for (Money v : profiles.of(i)) pool.push_back({v, i});
  for (int k = 0; k < channels; ++k) pool.push_back({reserve, n});

  // Ties go to the auctioneer (a bid must beat the reserve to win), then to
  // the lower bidder id; the test generators use distinct values anyway.
  auto bid_order = [](const Bid& a, const Bid& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.bidder > b.bidder;
  };
  std::sort(pool.begin(), pool.end(), bid_order);

  VickreyOutcome out;
  out.counts.assign(static_cast<std::size_t>(n), 0);
  out.payments.assign(static_cast<std::size_t>(n), 0);
  for (int r = 0; r < channels && r < static_cast<int>(pool.size()); ++r)
    if (pool[static_cast<std::size_t>(r)].bidder < n)
      out.counts[static_cast<std::size_t>(pool[static_cast<std::size_t>(r)].bidder)] += 1;

  for (int i = 0; i < n; ++i) {
    int won = out.counts[static_cast<std::size_t>(i)];
    if (won == 0) continue;
    std::vector<Bid> others;
    for (const Bid& b : pool)
      if (b.bidder != i) others.push_back(b);
    std::sort(others.begin(), others.end(), bid_order);
    // Opportunity cost: the top-`won` bids of the others that i pushed out of
    // the winning range [0, channels).
    for (int r = channels - won; r < channels; ++r)
      out.payments[static_cast<std::size_t>(i)] += others[static_cast<std::size_t>(r)].value;
  }
  return out;
}

DeviationReport enumerate_deviations(const ConflictGraph& g, const BidderProfiles& profiles,
                                     const AuctionConfig& cfg, int bidder, Money value_ceiling) {
  if (bidder < 0 || bidder >= g.n) throw std::invalid_argument("deviations: bad bidder");
  const ValuationVector truth = profiles.of(bidder);
  const int len = static_cast<int>(truth.size());

  // Grid size is C(ceiling + len, len); refuse absurd requests up front.
  std::uint64_t grid = 1;
  for (int j = 1; j <= len; ++j) {
    grid = grid * static_cast<std::uint64_t>(value_ceiling + j) / static_cast<std::uint64_t>(j);
    if (grid > kOracleOpLimit) throw std::runtime_error("deviations: report grid too large");
  }

  auto utility_of = [&](const ValuationVector& report) {
    BidderProfiles trial = profiles;
    trial.valuations[static_cast<std::size_t>(bidder)] = report;
    Outcome o = run_exclusive_auction(g, trial, cfg);
    return value_of_count(truth, o.counts[static_cast<std::size_t>(bidder)]) -
           o.payments[static_cast<std::size_t>(bidder)];
  };

  DeviationReport report;
  report.truthful_utility = utility_of(truth);
  report.best_utility = report.truthful_utility;
  report.best_vector = truth;

  ValuationVector work(static_cast<std::size_t>(len), 0);
  // Depth-first over weakly decreasing reports; a trailing zero means the
  // unit is never demanded, so this covers all shorter reports too.
  auto recurse = [&](auto&& self, int pos, Money upper) -> void {
    if (pos == len) {
      ++report.tried;
      Money u = utility_of(work);
      if (u > report.best_utility) {
        report.best_utility = u;
        report.best_vector = work;
      }
      return;
    }
    for (Money v = upper; v >= 0; --v) {
      work[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, v);
    }
  };
  if (len > 0) recurse(recurse, 0, value_ceiling);

  return report;
}

}  // namespace verum
