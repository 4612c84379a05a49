#include "gossip/pmf.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <cmath>
#include <numeric>

namespace gossip {

Pmf Pmf::binomial(std::size_t trials, double success) {
  std::vector<double> w(trials + 1, 0.0);
  if (success <= 0.0) {
    w.front() = 1.0;
  } else if (success >= 1.0) {
    w.back() = 1.0;
  } else {
    const boost::math::binomial_distribution<double> dist(
        static_cast<double>(trials), success);
    for (std::size_t k = 0; k <= trials; ++k) {
      w[k] = boost::math::pdf(dist, static_cast<double>(k));
    }
  }
  return Pmf(0, std::move(w));
}

double Pmf::operator()(long value) const {
  if (value < offset_ || value > last()) return 0.0;
  return weights_[static_cast<std::size_t>(value - offset_)];
}

double Pmf::total_mass() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

double Pmf::mean() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    acc += weights_[i] * static_cast<double>(offset_ + static_cast<long>(i));
  }
  return acc;
}

bool Pmf::is_normalized(double tol) const {
  for (double w : weights_) {
    if (!(w >= 0.0)) return false;
  }
  return std::abs(total_mass() - 1.0) <= tol;
}

Pmf convolve(const Pmf& a, const Pmf& b) {
  if (a.size() == 0 || b.size() == 0) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  const auto wa = a.weights();
  const auto wb = b.weights();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    if (wa[i] == 0.0) continue;
    for (std::size_t j = 0; j < wb.size(); ++j) out[i + j] += wa[i] * wb[j];
  }
  return Pmf(a.offset() + b.offset(), std::move(out));
}

}  // namespace gossip
