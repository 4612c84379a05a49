#include "gossip/model.hpp"

#include <cmath>

namespace gossip {

ModelParams validate_params(const ModelParams& raw) {
  // NaN fails every comparison below, so each check is written to reject it.
  if (raw.n < 2) throw InvalidParams("n >= 2 required");
  if (!(raw.p > 0.0 && raw.p < 1.0)) throw InvalidParams("p out of (0,1)");
  if (raw.m > raw.n) throw InvalidParams("m out of [0,n]");
  if (!(raw.lambda_e > 0.0) || !std::isfinite(raw.lambda_e)) {
    throw InvalidParams("lambda_e must be > 0");
  }
  if (!(raw.lambda_s >= 0.0) || !std::isfinite(raw.lambda_s)) {
    throw InvalidParams("lambda_s must be >= 0");
  }
  if (!(raw.lambda >= 0.0) || !std::isfinite(raw.lambda)) {
    throw InvalidParams("lambda must be >= 0");
  }
  if (!(raw.tail_tol > 0.0 && raw.tail_tol < 1.0)) {
    throw InvalidParams("tail_tol out of (0,1)");
  }
  if (!(raw.solve_tol > 0.0 && raw.solve_tol < 1.0)) {
    throw InvalidParams("solve_tol out of (0,1)");
  }
  return raw;
}

std::size_t geometric_truncation_depth(double rho, double tol) {
  if (rho <= 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(std::log(tol) / std::log(rho)));
}

DerivedRatios derived_ratios(const ModelParams& params) {
  DerivedRatios r;
  r.rho_s = params.lambda_s / (params.lambda_s + params.lambda_e);
  r.rho_g = params.lambda / (params.lambda + params.lambda_e);
  r.k_max = geometric_truncation_depth(r.rho_g, params.tail_tol);
  return r;
}

}  // namespace gossip
