#pragma once

// Embedded per-cycle Markov chain over (source bit, N).
//
// State (x, N) has index x * (n + 1) + N, so indices 0..n are the states
// with source bit 0 and n+1..2n+1 those with source bit 1.

#include <Eigen/Dense>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gossip/model.hpp"
#include "gossip/pmf.hpp"

namespace gossip {

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-N transmission capacity. capacity[N] is the budget m used by a cycle
/// that starts with N correct receivers; 0 <= capacity[N] <= n - N.
class PolicyTable {
 public:
  PolicyTable() = default;
  /// Throws std::invalid_argument if any entry exceeds n - N.
  explicit PolicyTable(std::vector<std::size_t> capacity);

  /// capacity[N] = min(m, n - N), which induces the same cycle law as a
  /// constant budget m.
  static PolicyTable constant(std::size_t n, std::size_t m);

  std::size_t n() const { return capacity_.empty() ? 0 : capacity_.size() - 1; }
  std::size_t operator[](std::size_t correct) const { return capacity_[correct]; }
  const std::vector<std::size_t>& capacity() const { return capacity_; }

 private:
  std::vector<std::size_t> capacity_;
};

using DenseMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct TransitionMatrix {
  std::size_t n = 0;
  DenseMatrix entries;  ///< 2(n+1) x 2(n+1), row-stochastic

  std::size_t dimension() const { return 2 * (n + 1); }
  std::size_t state(int source_bit, std::size_t correct) const {
    return static_cast<std::size_t>(source_bit) * (n + 1) + correct;
  }
};

enum class SolveMethod { kPowerIteration, kDirect };

struct StationaryDist {
  Eigen::VectorXd pi;  ///< indexed like TransitionMatrix states
  SolveMethod method = SolveMethod::kPowerIteration;
  std::size_t iterations = 0;
  double residual = 0.0;  ///< ||pi P - pi||_inf

  /// pi_{0,N} + pi_{1,N}.
  double marginal(std::size_t correct) const;
  std::size_t n() const { return static_cast<std::size_t>(pi.size()) / 2 - 1; }
};

inline constexpr std::size_t kPowerIterationCap = 1'000'000;

/// Q_N = law of N'' given N, evaluated with m = policy[N], for N = 0..n.
std::vector<Pmf> end_of_cycle_laws(const ModelParams& params,
                                   const PolicyTable& policy);

TransitionMatrix build_chain(const ModelParams& params, const PolicyTable& policy);
TransitionMatrix build_chain(std::size_t n, double p, const std::vector<Pmf>& laws);

/// Power iteration from the uniform vector; if the residual is still above
/// `tol` after kPowerIterationCap steps, falls back to the direct solve.
/// Throws NonConvergence when neither route reaches `tol`.
StationaryDist stationary(const TransitionMatrix& chain, double tol = 1e-12);

/// Power iteration only. Returns the last iterate even when it did not
/// converge; check `residual`.
StationaryDist stationary_power(const TransitionMatrix& chain, double tol,
                                std::size_t max_iterations = kPowerIterationCap);

/// Solves pi (P - I) = 0, sum(pi) = 1 directly. Throws NonConvergence when
/// the system is singular (reducible chain).
StationaryDist stationary_direct(const TransitionMatrix& chain);

double stationary_residual(const TransitionMatrix& chain, const Eigen::VectorXd& pi);

/// Long-term average fraction of receivers disagreeing with the source.
double average_error(const ModelParams& params, const PolicyTable& policy,
                     const StationaryDist& pi);
double average_error(const std::vector<Pmf>& laws, const StationaryDist& pi);

/// Average error of the same system with gossip switched off.
double no_gossip_baseline(const ModelParams& params, const PolicyTable& policy);

/// Everything one analytic evaluation produces.
struct ChainAnalysis {
  std::vector<Pmf> laws;
  TransitionMatrix chain;
  StationaryDist stationary;
  double delta = 0.0;
};

ChainAnalysis analyze(const ModelParams& params, const PolicyTable& policy);

/// Every diagonal entry positive.
bool has_positive_diagonal(const TransitionMatrix& chain);
/// Single strongly connected component over positive entries.
bool is_irreducible(const TransitionMatrix& chain);

std::string to_string(SolveMethod method);

}  // namespace gossip
