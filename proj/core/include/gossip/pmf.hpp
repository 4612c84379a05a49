#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gossip {

/// Probability mass function on the contiguous integer support
/// {offset, offset + 1, ..., offset + weights.size() - 1}.
class Pmf {
 public:
  Pmf() = default;
  Pmf(long offset, std::vector<double> weights)
      : offset_(offset), weights_(std::move(weights)) {}

  static Pmf point_mass(long value) { return Pmf(value, {1.0}); }

  /// Bin(trials, success) on {0, ..., trials}.
  static Pmf binomial(std::size_t trials, double success);

  long offset() const { return offset_; }
  long last() const { return offset_ + static_cast<long>(weights_.size()) - 1; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }

  /// Mass at `value`; zero outside the support.
  double operator()(long value) const;

  double total_mass() const;
  double mean() const;

  /// True iff all weights are >= 0 and the total is within `tol` of one.
  bool is_normalized(double tol) const;

 private:
  long offset_ = 0;
  std::vector<double> weights_;
};

/// Law of X + Y for independent X ~ a and Y ~ b.
Pmf convolve(const Pmf& a, const Pmf& b);

}  // namespace gossip
