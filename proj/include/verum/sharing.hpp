#pragma once

#include <vector>

#include "verum/clinch.hpp"
#include "verum/types.hpp"

namespace verum {

// Interference temperature (kelvin) seen by bidder i on channel k, given the
// conflict neighbors currently transmitting on k. Per sharer q:
//
//   P0 * (d_iq / d0)^(-alpha) * overlap(i, q) / (k_B * B)
//
// with overlap = min(b_i, b_q), the largest possible spectral overlap of the
// two sub-bands. Distances are clamped to 0.1 m so co-located nodes yield a
// huge-but-finite temperature.
double interference_temperature(int i, int k, const std::vector<int>& sharers,
                                const ConflictGraph& g, const SharingParams& sharing,
                                const std::vector<Node>& nodes);

// Literal usability test for bidder i on channel k against the committed
// co-channel sharers among its neighbors: available, interference temperature
// strictly below tau, and strict bandwidth headroom
// sum_q b_q < 1 - b_i. Note the strict inequalities: with b_i = 1 or tau = 0
// no shared channel is ever usable, which is what collapses the sharing
// engine onto the exclusive one.
bool channel_usability(int i, int k, const ConflictGraph& g,
                       const std::vector<ChannelMask>& committed,
                       const SharingParams& sharing, const std::vector<Node>& nodes);

// Usable channel opportunities for bidder i: the double sum over i's
// available channels and its closed neighborhood (j in N_i and j = i) of the
// provided usability matrix.
int usable_channel_opportunities(int i, const ConflictGraph& g,
                                 const std::vector<ChannelMask>& usability);

// Admission test used by the engine and the assignment pass: i may share
// channel k only if i's own usability holds AND every already-committed
// neighbor on k keeps strict bandwidth headroom and stays strictly below tau
// once i is added. The second half is what channel_usability alone cannot
// see; without it an early joiner could be pushed over its own limits by a
// later one.
bool can_share(int i, int k, const ConflictGraph& g,
               const std::vector<ChannelMask>& committed, const SharingParams& sharing,
               const std::vector<Node>& nodes);

// Price of a shared channel: the exclusive price scaled by the bidder's
// bandwidth fraction, rounded half-up to whole currency units.
Money shared_price(Money exclusive_price, int bandwidth_bp);

// Clinching auction with channel sharing. Identical round structure to
// run_exclusive_auction, but a bidder's supply grows by the channels it could
// join right now: channels of its own that some conflict neighbor has already
// committed to and that still pass the admission test. As in the exclusive
// engine, every awarded unit is bound to a concrete channel (fresh or joined)
// at clinch time, so sharing never invents channels that the final assignment
// cannot realize, and with b = 1 everywhere (or tau = 0) no join is ever
// feasible and the run collapses onto the exclusive engine exactly, channel
// for channel. Every won unit is priced at shared_price(clinch price, b_i).
Outcome run_sharing_auction(const ConflictGraph& g, const BidderProfiles& profiles,
                            const AuctionConfig& cfg, const SharingParams& sharing,
                            const std::vector<Node>& nodes, const RoundObserver& observer = {});

}  // namespace verum
