#pragma once

// Per-update-cycle probability laws.
//
// A cycle starts with N of the n receivers holding the source's bit. In the
// source phase the source races its own next change: each win updates one
// incorrect receiver, up to a budget of m (or n - N if fewer are wrong). If
// the budget completes, a gossip phase follows in which every receiver not
// touched by the source collects K_i ~ Geo updates from uniformly chosen
// peers and, when the cycle ends, adopts the majority bit among them (fair
// coin on ties, prior kept on zero updates).

#include <cstddef>
#include <stdexcept>

#include "gossip/model.hpp"
#include "gossip/pmf.hpp"

namespace gossip {

/// Raised when (N, m, prior) describe an impossible gossip-phase population.
class CompositionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Whether a gossiping receiver's prior bit equals the source's bit.
enum class Prior { kMatches, kDiffers };

/// Number of source updates K_s in a cycle starting with N correct nodes.
Pmf ks_pmf(const ModelParams& params, std::size_t correct);

/// Number of gossip updates K_i a receiver collects, truncated at k_max.
/// The dropped tail mass is rho_g^(k_max+1) <= tail_tol.
Pmf ki_pmf(const ModelParams& params);

/// Number R_i of received updates equal to the source's bit, given K_i.
Pmf ri_pmf(const ModelParams& params, std::size_t correct, std::size_t updates,
           Prior prior);

/// Probability that a gossiping receiver ends the cycle holding the
/// source's bit: P_T1(N) for Prior::kMatches, P_T2(N) for Prior::kDiffers.
double adopt_prob(const ModelParams& params, std::size_t correct, Prior prior);

/// Law of N' (gossip-phase receivers ending correct) for N < n - m.
Pmf nprime_pmf(const ModelParams& params, std::size_t correct);

/// Law of N'' (receivers correct at cycle end) given N on {0, ..., n}.
Pmf ndp_given_n_pmf(const ModelParams& params, std::size_t correct);

/// Success probability of one received update matching the source.
double sender_match_fraction(const ModelParams& params, std::size_t correct,
                             Prior prior);

}  // namespace gossip
