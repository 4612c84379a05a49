#pragma once

// High- and low-gossip-rate approximations of the adoption probabilities,
// the low-rate gossip gain, and the adaptive capacity policy built on it.

#include <cstddef>
#include <optional>
#include <vector>

#include "gossip/chain.hpp"
#include "gossip/cycle_law.hpp"
#include "gossip/model.hpp"

namespace gossip {

/// Standard normal upper tail, 0.5 * erfc(x / sqrt 2).
double q_function(double x);

/// Normalized distance of the sender majority from one half:
/// (1/2 - f) / sqrt(f (1 - f)) with f = (N + m) / n. Requires 0 < N + m < n.
double a_coefficient(const ModelParams& params, std::size_t correct);

/// Sum over k >= 1 of Q(sqrt(k) A(N)) P(K_i = k), truncated at k_max.
double pt2_high_approx(const ModelParams& params, std::size_t correct);

/// Limit of P_T2 as lambda -> infinity: 0, 1/2 or 1 by the side of n/2 on
/// which N + m falls.
double pt2_high_limit(const ModelParams& params, std::size_t correct);

/// Linear low-rate forms: rho_g (N+m)/n for Prior::kDiffers and
/// 1 - rho_g (n-N-m)/n for Prior::kMatches.
double pt_low_approx(const ModelParams& params, std::size_t correct, Prior prior);

/// Low-rate reduction of the per-cycle error due to gossip,
/// G(N) = (m / n^2) (n - N - m) rho_g rho_s^m, for 0 <= N <= n - m.
double gossip_gain(const ModelParams& params, std::size_t correct);

/// The same gain computed from the low-rate conditional means of N1' and N2'
/// rather than from the closed form. Used to cross-check gossip_gain.
double low_rate_mean_gain(const ModelParams& params, std::size_t correct);

struct GainProfile {
  std::vector<double> per_state_gain;  ///< G(N), N = 0..n-m
  std::optional<double> fitted_B;
  double total_gain_estimate = 0.0;  ///< B * sum_N pi(N) G(N), B = 1 if unset
};

GainProfile gain_profile(const ModelParams& params, const StationaryDist& pi,
                         std::optional<double> scaling = std::nullopt);

struct GainPoint {
  std::size_t m = 0;
  double delta = 0.0;
  double delta_no_gossip = 0.0;
  double observed_gain = 0.0;   ///< |delta - delta_no_gossip|
  double predicted_gain = 0.0;  ///< sum_N pi(N) G(N) before scaling
};

struct ScalingFit {
  double B = 0.0;
  std::vector<GainPoint> points;
};

/// Least-squares B minimizing sum_m (observed - B * predicted)^2 over the
/// constant-m chains in `m_grid`. Throws std::domain_error when every
/// predictor is zero (e.g. lambda = 0).
ScalingFit fit_scaling_B(const ModelParams& params, const std::vector<std::size_t>& m_grid);

/// Observed and predicted gain at one constant m.
GainPoint gain_point(const ModelParams& params, std::size_t m);

struct CapacityChoice {
  double real = 0.0;        ///< stationary point of G(N) in m
  std::size_t rounded = 0;  ///< nearest integer, clamped to [0, n - N]
};

/// Gain-maximizing capacity for a cycle starting with N correct receivers.
/// Returns {0, 0} when lambda_s = 0.
CapacityChoice m_star(const ModelParams& params, std::size_t correct);

PolicyTable adaptive_policy_table(const ModelParams& params);

/// Stationary mean of the capacity a policy uses.
double expected_capacity(const StationaryDist& pi, const PolicyTable& policy);

}  // namespace gossip
