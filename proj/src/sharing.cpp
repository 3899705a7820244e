#include "verum/sharing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "verum/bidder.hpp"

namespace verum {
namespace {

// Received power at j from a sharer q, scaled by the largest possible
// spectral overlap of their sub-bands, expressed directly in kelvin.
double temperature_term(int j, int q, const SharingParams& sp, const std::vector<Node>& nodes) {
  const SharingModel& m = sp.model;
  double dx = nodes[static_cast<std::size_t>(j)].x - nodes[static_cast<std::size_t>(q)].x;
  double dy = nodes[static_cast<std::size_t>(j)].y - nodes[static_cast<std::size_t>(q)].y;
  double d = std::max(std::sqrt(dx * dx + dy * dy), 0.1);
  double overlap = std::min(sp.fraction_bp(j), sp.fraction_bp(q)) / 10000.0;
  double power = m.ref_power_watts * std::pow(d / m.ref_distance_m, -m.path_loss_exponent);
  return power * overlap / (kBoltzmann * m.channel_bandwidth_hz);
}

int neighbor_availability(const ConflictGraph& g, int i, int k) {
  int c = 0;
  for (int j : g.neighbors(i))
    if (g.available(j, k)) ++c;
  return c;
}

// Incremental view of what is committed where, with per-(bidder, channel)
// aggregates so the admission test is cheap.
struct CommitState {
  const ConflictGraph& g;
  const SharingParams& sp;
  const std::vector<Node>& nodes;
  std::vector<ChannelMask> committed;       // per bidder
  std::vector<std::vector<int>> nb_users;   // [i][k] committed neighbors on k
  std::vector<std::vector<int>> nb_bp;      // [i][k] sum of their fractions (bp)
  std::vector<std::vector<double>> nb_temp; // [i][k] temperature at i from them

  CommitState(const ConflictGraph& graph, const SharingParams& sharing,
              const std::vector<Node>& positions)
      : g(graph), sp(sharing), nodes(positions) {
    const auto n = static_cast<std::size_t>(g.n);
    const auto c = static_cast<std::size_t>(g.channels);
    committed.assign(n, 0);
    nb_users.assign(n, std::vector<int>(c, 0));
    nb_bp.assign(n, std::vector<int>(c, 0));
    nb_temp.assign(n, std::vector<double>(c, 0.0));
  }

  bool holds(int i, int k) const { return (committed[static_cast<std::size_t>(i)] >> k) & 1u; }

  // Join test: at least one committed neighbor on k, strict headroom for i,
  // and every committed neighbor keeps strict headroom once i is added.
  bool can_join(int i, int k) const {
    const auto iu = static_cast<std::size_t>(i);
    const auto ku = static_cast<std::size_t>(k);
    if (!g.available(i, k) || holds(i, k)) return false;
    if (nb_users[iu][ku] == 0) return false;
    if (nb_bp[iu][ku] >= 10000 - sp.fraction_bp(i)) return false;
    if (nb_temp[iu][ku] >= sp.model.tau_kelvin) return false;
    for (int q : g.neighbors(i)) {
      if (!holds(q, k)) continue;
      const auto qu = static_cast<std::size_t>(q);
      if (nb_bp[qu][ku] + sp.fraction_bp(i) >= 10000 - sp.fraction_bp(q)) return false;
      if (nb_temp[qu][ku] + temperature_term(q, i, sp, nodes) >= sp.model.tau_kelvin)
        return false;
    }
    return true;
  }

  int joinable_count(int i) const {
    int total = 0;
    for (int k = 0; k < g.channels; ++k)
      if (can_join(i, k)) ++total;
    return total;
  }

  void commit(int i, int k) {
    committed[static_cast<std::size_t>(i)] |= ChannelMask{1} << k;
    for (int j : g.neighbors(i)) {
      const auto ju = static_cast<std::size_t>(j);
      const auto ku = static_cast<std::size_t>(k);
      nb_users[ju][ku] += 1;
      nb_bp[ju][ku] += sp.fraction_bp(i);
      nb_temp[ju][ku] += temperature_term(j, i, sp, nodes);
    }
  }

  // Channel for i's next unit: untouched channels first (rarest in the
  // neighborhood, via the same rule the exclusive engine uses), then
  // joinable ones. -1 when nothing fits right now.
  int pick_channel(int i) const {
    int best = pick_fresh_channel(g, committed, i);
    if (best >= 0) return best;
    int best_metric = 0;
    for (int k = 0; k < g.channels; ++k) {
      if (!can_join(i, k)) continue;
      int metric = neighbor_availability(g, i, k);
      if (best == -1 || metric < best_metric) best = k, best_metric = metric;
    }
    return best;
  }
};

}  // namespace

double interference_temperature(int i, int k, const std::vector<int>& sharers,
                                const ConflictGraph& g, const SharingParams& sharing,
                                const std::vector<Node>& nodes) {
  (void)k;  // fractions are per-bidder across all channels; k kept for shape
  double t = 0.0;
  for (int q : sharers) {
    if (q == i) continue;
    if (!g.has_edge(i, q)) continue;  // only conflict neighbors interfere
    t += temperature_term(i, q, sharing, nodes);
  }
  return t;
}

bool channel_usability(int i, int k, const ConflictGraph& g,
                       const std::vector<ChannelMask>& committed,
                       const SharingParams& sharing, const std::vector<Node>& nodes) {
  if (!g.available(i, k)) return false;
  std::vector<int> sharers;
  int bp_sum = 0;
  for (int j : g.neighbors(i)) {
    if ((committed[static_cast<std::size_t>(j)] >> k) & 1u) {
      sharers.push_back(j);
      bp_sum += sharing.fraction_bp(j);
    }
  }
  if (bp_sum >= 10000 - sharing.fraction_bp(i)) return false;  // strict headroom
  return interference_temperature(i, k, sharers, g, sharing, nodes) < sharing.model.tau_kelvin;
}

int usable_channel_opportunities(int i, const ConflictGraph& g,
                                 const std::vector<ChannelMask>& usability) {
  int total = 0;
  ChannelMask mine = g.avail[static_cast<std::size_t>(i)];
  for (int k = 0; k < g.channels; ++k) {
    if (!((mine >> k) & 1u)) continue;
    if ((usability[static_cast<std::size_t>(i)] >> k) & 1u) ++total;
    for (int j : g.neighbors(i))
      if ((usability[static_cast<std::size_t>(j)] >> k) & 1u) ++total;
  }
  return total;
}

bool can_share(int i, int k, const ConflictGraph& g,
               const std::vector<ChannelMask>& committed, const SharingParams& sharing,
               const std::vector<Node>& nodes) {
  if (!channel_usability(i, k, g, committed, sharing, nodes)) return false;
  for (int q : g.neighbors(i)) {
    if (!((committed[static_cast<std::size_t>(q)] >> k) & 1u)) continue;
    int bp_sum = 0;
    std::vector<int> sharers;
    for (int r : g.neighbors(q)) {
      if (r != i && !((committed[static_cast<std::size_t>(r)] >> k) & 1u)) continue;
      sharers.push_back(r);
      bp_sum += sharing.fraction_bp(r);
    }
    if (bp_sum >= 10000 - sharing.fraction_bp(q)) return false;
    if (interference_temperature(q, k, sharers, g, sharing, nodes) >= sharing.model.tau_kelvin)
      return false;
  }
  return true;
}

Money shared_price(Money exclusive_price, int bandwidth_bp) {
  if (exclusive_price < 0 || bandwidth_bp < 0)
    throw std::invalid_argument("shared_price: negative input");
  return (exclusive_price * bandwidth_bp + 5000) / 10000;  // round half-up
}

Outcome run_sharing_auction(const ConflictGraph& g, const BidderProfiles& profiles,
                            const AuctionConfig& cfg, const SharingParams& sharing,
                            const std::vector<Node>& nodes, const RoundObserver& observer) {
  if (profiles.size() != g.n) throw std::invalid_argument("auction: profile/graph size mismatch");
  if (static_cast<int>(nodes.size()) != g.n)
    throw std::invalid_argument("auction: node positions required for sharing");
  if (static_cast<int>(sharing.bandwidth_bp.size()) != g.n)
    throw std::invalid_argument("auction: bandwidth fraction per bidder required");
  if (cfg.step_size <= 0) throw std::invalid_argument("auction: step_size must be positive");

  const int n = g.n;
  Outcome out;
  out.counts.assign(static_cast<std::size_t>(n), 0);
  out.payments.assign(static_cast<std::size_t>(n), 0);

  std::vector<int> demands(static_cast<std::size_t>(n), 0);
  std::vector<int> cumulative(static_cast<std::size_t>(n), 0);
  CommitState commits(g, sharing, nodes);

  const Money price_limit = profiles.max_value() + cfg.step_size;

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
      break;
    }

    RoundRecord record;
    if (observer) record = RoundRecord{round, price, demands, {}};

    // Same synchronous pass as the exclusive engine -- residual supply from
    // the other bidders' start-of-round demands, never from one's own bid --
    // except that channels a conflict neighbor has already committed to may
    // still count as supply when the interference-temperature and bandwidth
    // headroom tests admit this bidder alongside them. Every awarded unit,
    // shared or not, must secure a concrete channel on the spot; a unit that
    // cannot be placed is not awarded and not charged.
    for (int i = 0; i < n; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      int di = demands[iu];
      if (di <= cumulative[iu]) continue;
      long neighbor_demand = 0;
      for (int j : g.neighbors(i)) neighbor_demand += demands[static_cast<std::size_t>(j)];
      int xi = g.available_count(i);
      long base = xi - neighbor_demand + count_exclusive_channels(g, demands, i);
      long lifted = base + commits.joinable_count(i);
      int goal = static_cast<int>(std::min<long>({di, xi, std::max<long>(0, lifted)}));

      int reached = cumulative[iu];
      while (reached < goal) {
        int k = commits.pick_channel(i);
        if (k < 0) break;
        commits.commit(i, k);
        ++reached;
      }

      if (reached > cumulative[iu]) {
        int delta = reached - cumulative[iu];
        cumulative[iu] = reached;
        out.ledger.push_back({i, delta, price});
        out.payments[iu] += shared_price(price, sharing.fraction_bp(i)) * delta;
        if (observer) record.clinches.push_back({i, delta, price});
      }
    }

    if (observer) observer(record);
    if (price > price_limit) break;
  }

  out.counts = cumulative;
  for (Money s : out.payments) out.revenue += s;
  // Every unit was bound to a channel when it was clinched; the commit masks
  // are the assignment.
  out.assignment.masks = std::move(commits.committed);
  return out;
}

}  // namespace verum
