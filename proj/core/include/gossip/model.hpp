#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gossip {

/// Raised when a parameter set violates a model invariant. The message names
/// the violated invariant, e.g. "p out of (0,1)".
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rates and counts of one source / n-receiver system.
///
/// Rates are in events per unit time. `m` is the source's per-cycle
/// transmission capacity; `m == 0` skips the source phase entirely and the
/// gossip phase starts at once.
struct ModelParams {
  std::size_t n = 2;
  std::size_t m = 0;
  double p = 0.5;
  double lambda_e = 1.0;
  double lambda_s = 0.0;
  double lambda = 0.0;
  double tail_tol = 1e-12;
  double solve_tol = 1e-12;

  /// Copy with a different transmission capacity.
  ModelParams with_m(std::size_t capacity) const {
    ModelParams out = *this;
    out.m = capacity;
    return out;
  }
  ModelParams with_lambda(double rate) const {
    ModelParams out = *this;
    out.lambda = rate;
    return out;
  }
};

/// Race probabilities shared by every per-cycle law.
struct DerivedRatios {
  double rho_s = 0.0;  ///< lambda_s / (lambda_s + lambda_e)
  double rho_g = 0.0;  ///< lambda / (lambda + lambda_e)
  std::size_t k_max = 0;  ///< truncation depth of gossip-count sums
};

/// Returns `raw` unchanged if every invariant holds; otherwise throws
/// InvalidParams naming the first violated one.
ModelParams validate_params(const ModelParams& raw);

DerivedRatios derived_ratios(const ModelParams& params);

/// Smallest k with rho^k <= tol, or 0 when rho == 0.
std::size_t geometric_truncation_depth(double rho, double tol);

}  // namespace gossip
