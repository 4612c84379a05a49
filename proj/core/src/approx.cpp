#include "gossip/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gossip {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double a_coefficient(const ModelParams& params, std::size_t correct) {
  const std::size_t senders = correct + params.m;
  if (senders == 0 || senders >= params.n) {
    throw CompositionError("degenerate composition: N + m must lie in (0, n)");
  }
  const double f = static_cast<double>(senders) / static_cast<double>(params.n);
  return (0.5 - f) / std::sqrt(f * (1.0 - f));
}

double pt2_high_approx(const ModelParams& params, std::size_t correct) {
  const double a = a_coefficient(params, correct);
  const auto ratios = derived_ratios(params);
  double sum = 0.0;
  double weight = 1.0 - ratios.rho_g;
  for (std::size_t k = 1; k <= ratios.k_max; ++k) {
    weight *= ratios.rho_g;
    sum += q_function(std::sqrt(static_cast<double>(k)) * a) * weight;
  }
  return sum;
}

double pt2_high_limit(const ModelParams& params, std::size_t correct) {
  // Compare 2 (N + m) with n in integers to avoid rounding at the midpoint.
  const std::size_t twice = 2 * (correct + params.m);
  if (twice < params.n) return 0.0;
  if (twice == params.n) return 0.5;
  return 1.0;
}

double pt_low_approx(const ModelParams& params, std::size_t correct, Prior prior) {
  if (correct + params.m > params.n) throw CompositionError("N + m exceeds n");
  const double rho_g = derived_ratios(params).rho_g;
  const double n = static_cast<double>(params.n);
  if (prior == Prior::kDiffers) {
    return rho_g * static_cast<double>(correct + params.m) / n;
  }
  return 1.0 - rho_g * static_cast<double>(params.n - correct - params.m) / n;
}

double gossip_gain(const ModelParams& params, std::size_t correct) {
  if (correct + params.m > params.n) {
    throw std::out_of_range("gossip_gain needs N <= n - m");
  }
  const auto ratios = derived_ratios(params);
  const double n = static_cast<double>(params.n);
  const double m = static_cast<double>(params.m);
  return m / (n * n) * static_cast<double>(params.n - correct - params.m) *
         ratios.rho_g * std::pow(ratios.rho_s, m);
}

double low_rate_mean_gain(const ModelParams& params, std::size_t correct) {
  if (correct + params.m > params.n) {
    throw std::out_of_range("low_rate_mean_gain needs N <= n - m");
  }
  const auto ratios = derived_ratios(params);
  const double n_correct = static_cast<double>(correct);
  const double n_wrong = static_cast<double>(params.n - correct - params.m);
  const double m = static_cast<double>(params.m);
  const double keep = n_correct * pt_low_approx(params, correct, Prior::kMatches);
  const double gain = n_wrong * pt_low_approx(params, correct, Prior::kDiffers);
  const double end_correct = keep + gain + m;
  return (end_correct - (n_correct + m)) / static_cast<double>(params.n) *
         std::pow(ratios.rho_s, m);
}

GainProfile gain_profile(const ModelParams& params, const StationaryDist& pi,
                         std::optional<double> scaling) {
  GainProfile out;
  out.fitted_B = scaling;
  double weighted = 0.0;
  for (std::size_t correct = 0; correct + params.m <= params.n; ++correct) {
    const double g = gossip_gain(params, correct);
    out.per_state_gain.push_back(g);
    weighted += pi.marginal(correct) * g;
  }
  out.total_gain_estimate = scaling.value_or(1.0) * weighted;
  return out;
}

GainPoint gain_point(const ModelParams& params, std::size_t m) {
  const ModelParams at_m = params.with_m(m);
  const PolicyTable policy = PolicyTable::constant(params.n, m);
  const ChainAnalysis with_gossip = analyze(at_m, policy);
  GainPoint point;
  point.m = m;
  point.delta = with_gossip.delta;
  point.delta_no_gossip = no_gossip_baseline(at_m, policy);
  point.observed_gain = std::abs(point.delta - point.delta_no_gossip);
  point.predicted_gain = gain_profile(at_m, with_gossip.stationary).total_gain_estimate;
  return point;
}

ScalingFit fit_scaling_B(const ModelParams& params,
                         const std::vector<std::size_t>& m_grid) {
  if (m_grid.empty()) throw std::invalid_argument("empty m grid");
  ScalingFit fit;
  double cross = 0.0;
  double square = 0.0;
  for (std::size_t m : m_grid) {
    const GainPoint point = gain_point(params, m);
    cross += point.predicted_gain * point.observed_gain;
    square += point.predicted_gain * point.predicted_gain;
    fit.points.push_back(point);
  }
  if (!(square > 0.0)) throw std::domain_error("degenerate fit: all predictors are zero");
  fit.B = cross / square;
  return fit;
}

CapacityChoice m_star(const ModelParams& params, std::size_t correct) {
  if (correct > params.n) throw std::out_of_range("N out of [0, n]");
  if (params.lambda_s == 0.0) return {};
  const double rho_s = derived_ratios(params).rho_s;
  const double half = static_cast<double>(params.n - correct) / 2.0;
  const double inv_log = 1.0 / std::log(rho_s);  // negative
  const double root = std::sqrt(half * half + inv_log * inv_log);

  CapacityChoice choice;
  choice.real = half - inv_log - root;
  const double other = half - inv_log + root;
  if (correct < params.n && !(other > static_cast<double>(params.n - correct))) {
    throw std::logic_error("second stationary point of G(N) inside [0, n - N]");
  }
  const double rounded = std::round(choice.real);
  choice.rounded = static_cast<std::size_t>(
      std::clamp(rounded, 0.0, static_cast<double>(params.n - correct)));
  return choice;
}

PolicyTable adaptive_policy_table(const ModelParams& params) {
  std::vector<std::size_t> capacity(params.n + 1);
  for (std::size_t correct = 0; correct <= params.n; ++correct) {
    capacity[correct] = m_star(params, correct).rounded;
  }
  return PolicyTable(std::move(capacity));
}

double expected_capacity(const StationaryDist& pi, const PolicyTable& policy) {
  if (pi.n() != policy.n()) throw std::invalid_argument("dimension mismatch");
  double mean = 0.0;
  for (std::size_t correct = 0; correct <= policy.n(); ++correct) {
    mean += pi.marginal(correct) * static_cast<double>(policy[correct]);
  }
  return mean;
}

}  // namespace gossip
