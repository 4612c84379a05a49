#include "gossip/cycle_law.hpp"

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <string>
#include <vector>

namespace gossip {
namespace {

void require_correct_in_range(const ModelParams& params, std::size_t correct) {
  if (correct > params.n) {
    throw std::out_of_range("N=" + std::to_string(correct) + " out of [0," +
                            std::to_string(params.n) + "]");
  }
}

void require_composition(const ModelParams& params, std::size_t correct,
                         Prior prior) {
  const std::size_t senders = correct + params.m;
  if (senders > params.n) throw CompositionError("N + m exceeds n");
  if (prior == Prior::kMatches && correct == 0) {
    throw CompositionError("no prior-correct receiver when N = 0");
  }
  if (prior == Prior::kDiffers && senders > params.n - 1) {
    throw CompositionError("no prior-incorrect receiver when N + m = n");
  }
}

// P(Bin(trials, q) >= at_least).
double binomial_upper_tail(std::size_t trials, std::size_t at_least, double q) {
  if (at_least == 0) return 1.0;
  if (at_least > trials) return 0.0;
  if (q <= 0.0) return 0.0;
  if (q >= 1.0) return 1.0;
  const boost::math::binomial_distribution<double> dist(
      static_cast<double>(trials), q);
  return boost::math::cdf(
      boost::math::complement(dist, static_cast<double>(at_least - 1)));
}

double binomial_point(std::size_t trials, std::size_t k, double q) {
  if (q <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (q >= 1.0) return k == trials ? 1.0 : 0.0;
  const boost::math::binomial_distribution<double> dist(
      static_cast<double>(trials), q);
  return boost::math::pdf(dist, static_cast<double>(k));
}

}  // namespace

double sender_match_fraction(const ModelParams& params, std::size_t correct,
                             Prior prior) {
  // Source-updated receivers send but never receive, so they count as
  // correct senders. A receiver never hears from itself.
  const double peers = static_cast<double>(params.n - 1);
  const double matching = static_cast<double>(correct + params.m);
  return prior == Prior::kMatches ? (matching - 1.0) / peers : matching / peers;
}

Pmf ks_pmf(const ModelParams& params, std::size_t correct) {
  require_correct_in_range(params, correct);
  const double rho_s = derived_ratios(params).rho_s;
  const std::size_t budget =
      correct < params.n - params.m ? params.m : params.n - correct;
  std::vector<double> w(budget + 1);
  double power = 1.0;
  for (std::size_t k = 0; k < budget; ++k) {
    w[k] = power * (1.0 - rho_s);
    power *= rho_s;
  }
  w[budget] = power;
  return Pmf(0, std::move(w));
}

Pmf ki_pmf(const ModelParams& params) {
  const auto ratios = derived_ratios(params);
  std::vector<double> w(ratios.k_max + 1);
  double power = 1.0;
  for (auto& x : w) {
    x = power * (1.0 - ratios.rho_g);
    power *= ratios.rho_g;
  }
  return Pmf(0, std::move(w));
}

Pmf ri_pmf(const ModelParams& params, std::size_t correct, std::size_t updates,
           Prior prior) {
  require_composition(params, correct, prior);
  return Pmf::binomial(updates, sender_match_fraction(params, correct, prior));
}

double adopt_prob(const ModelParams& params, std::size_t correct, Prior prior) {
  require_composition(params, correct, prior);
  const auto ratios = derived_ratios(params);
  const double hold = prior == Prior::kMatches ? 1.0 - ratios.rho_g : 0.0;
  if (ratios.rho_g == 0.0) return hold;

  const double q = sender_match_fraction(params, correct, prior);
  double strict = 0.0;
  double tie = 0.0;
  double weight = 1.0 - ratios.rho_g;  // P(K_i = 0)
  for (std::size_t k = 1; k <= ratios.k_max; ++k) {
    weight *= ratios.rho_g;
    strict += weight * binomial_upper_tail(k, k / 2 + 1, q);
    if (k % 2 == 0) tie += weight * binomial_point(k, k / 2, q);
  }
  return std::clamp(strict + 0.5 * tie + hold, 0.0, 1.0);
}

Pmf nprime_pmf(const ModelParams& params, std::size_t correct) {
  require_correct_in_range(params, correct);
  if (correct + params.m >= params.n) {
    throw CompositionError("gossip phase needs N < n - m");
  }
  const Pmf keep = correct == 0
                       ? Pmf::point_mass(0)
                       : Pmf::binomial(correct,
                                       adopt_prob(params, correct, Prior::kMatches));
  const Pmf gain = Pmf::binomial(params.n - correct - params.m,
                                 adopt_prob(params, correct, Prior::kDiffers));
  return convolve(keep, gain);
}

Pmf ndp_given_n_pmf(const ModelParams& params, std::size_t correct) {
  const Pmf sent = ks_pmf(params, correct);
  const auto budget = static_cast<std::size_t>(sent.last());
  std::vector<double> w(params.n + 1, 0.0);

  // Cycle ended inside the source phase after k < budget updates.
  for (std::size_t k = 0; k < budget; ++k) {
    w[correct + k] += sent(static_cast<long>(k));
  }
  const double completed = sent(static_cast<long>(budget));
  if (correct < params.n - params.m) {
    const Pmf gossip = nprime_pmf(params, correct);
    for (std::size_t i = 0; i < gossip.size(); ++i) {
      w[params.m + i] += completed * gossip.weights()[i];
    }
  } else {
    // Every receiver was corrected; gossip among unanimous nodes is inert.
    w[params.n] += completed;
  }
  return Pmf(0, std::move(w));
}

}  // namespace gossip
