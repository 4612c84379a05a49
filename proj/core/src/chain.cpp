#include "gossip/chain.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "gossip/cycle_law.hpp"

namespace gossip {

PolicyTable::PolicyTable(std::vector<std::size_t> capacity)
    : capacity_(std::move(capacity)) {
  if (capacity_.empty()) throw std::invalid_argument("empty policy table");
  const std::size_t n = capacity_.size() - 1;
  for (std::size_t correct = 0; correct <= n; ++correct) {
    if (capacity_[correct] > n - correct) {
      throw std::invalid_argument("policy capacity[" + std::to_string(correct) +
                                  "] exceeds n - N");
    }
  }
}

PolicyTable PolicyTable::constant(std::size_t n, std::size_t m) {
  std::vector<std::size_t> cap(n + 1);
  for (std::size_t correct = 0; correct <= n; ++correct) {
    cap[correct] = std::min(m, n - correct);
  }
  return PolicyTable(std::move(cap));
}

double StationaryDist::marginal(std::size_t correct) const {
  const auto half = pi.size() / 2;
  return pi[static_cast<Eigen::Index>(correct)] +
         pi[static_cast<Eigen::Index>(half + correct)];
}

std::vector<Pmf> end_of_cycle_laws(const ModelParams& params,
                                   const PolicyTable& policy) {
  if (policy.capacity().size() != params.n + 1) {
    throw std::invalid_argument("policy length must be n + 1");
  }
  std::vector<Pmf> laws;
  laws.reserve(params.n + 1);
  for (std::size_t correct = 0; correct <= params.n; ++correct) {
    laws.push_back(ndp_given_n_pmf(params.with_m(policy[correct]), correct));
  }
  return laws;
}

TransitionMatrix build_chain(std::size_t n, double p, const std::vector<Pmf>& laws) {
  TransitionMatrix chain;
  chain.n = n;
  const auto dim = static_cast<Eigen::Index>(chain.dimension());
  chain.entries = DenseMatrix::Zero(dim, dim);
  for (int bit = 0; bit < 2; ++bit) {
    for (std::size_t correct = 0; correct <= n; ++correct) {
      const auto row = static_cast<Eigen::Index>(chain.state(bit, correct));
      const Pmf& law = laws[correct];
      for (std::size_t end = 0; end <= n; ++end) {
        const double q = law(static_cast<long>(end));
        if (q == 0.0) continue;
        // No flip: the source keeps its bit and N'' receivers agree with it.
        chain.entries(row, static_cast<Eigen::Index>(chain.state(bit, end))) +=
            (1.0 - p) * q;
        // Flip: the n - N'' receivers that disagreed are now the correct ones.
        chain.entries(row,
                      static_cast<Eigen::Index>(chain.state(1 - bit, n - end))) +=
            p * q;
      }
    }
  }
  return chain;
}

TransitionMatrix build_chain(const ModelParams& params, const PolicyTable& policy) {
  return build_chain(params.n, params.p, end_of_cycle_laws(params, policy));
}

double stationary_residual(const TransitionMatrix& chain, const Eigen::VectorXd& pi) {
  const Eigen::VectorXd next = chain.entries.transpose() * pi;
  return (next - pi).cwiseAbs().maxCoeff();
}

StationaryDist stationary_power(const TransitionMatrix& chain, double tol,
                                std::size_t max_iterations) {
  const auto dim = static_cast<Eigen::Index>(chain.dimension());
  const DenseMatrix transposed = chain.entries.transpose();
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(dim, 1.0 / static_cast<double>(dim));
  Eigen::VectorXd next(dim);

  StationaryDist out;
  out.method = SolveMethod::kPowerIteration;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    next.noalias() = transposed * pi;
    next /= next.sum();
    const double step = (next - pi).cwiseAbs().maxCoeff();
    pi.swap(next);
    out.iterations = it + 1;
    // The step size bounds the residual of the previous iterate; re-check the
    // current one before accepting it.
    if (step <= tol && stationary_residual(chain, pi) <= tol) break;
  }
  out.pi = std::move(pi);
  out.residual = stationary_residual(chain, out.pi);
  return out;
}

StationaryDist stationary_direct(const TransitionMatrix& chain) {
  const auto dim = static_cast<Eigen::Index>(chain.dimension());
  Eigen::MatrixXd system = chain.entries.transpose();
  system -= Eigen::MatrixXd::Identity(dim, dim);
  system.row(dim - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  rhs[dim - 1] = 1.0;

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system);
  if (qr.rank() < dim) {
    throw NonConvergence("direct stationary solve: singular system (rank " +
                         std::to_string(qr.rank()) + " < " + std::to_string(dim) +
                         "); chain is reducible");
  }
  Eigen::VectorXd pi = qr.solve(rhs);
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();

  StationaryDist out;
  out.method = SolveMethod::kDirect;
  out.pi = std::move(pi);
  out.residual = stationary_residual(chain, out.pi);
  return out;
}

StationaryDist stationary(const TransitionMatrix& chain, double tol) {
  StationaryDist power = stationary_power(chain, tol);
  if (power.residual <= tol) return power;
  StationaryDist direct;
  try {
    direct = stationary_direct(chain);
  } catch (const NonConvergence& e) {
    throw NonConvergence("power iteration residual " + std::to_string(power.residual) +
                         " after " + std::to_string(power.iterations) +
                         " iterations; " + e.what());
  }
  if (direct.residual > tol) {
    throw NonConvergence("stationary residual " + std::to_string(direct.residual) +
                         " above tolerance " + std::to_string(tol) +
                         " (power iteration: " + std::to_string(power.residual) + ")");
  }
  return direct;
}

double average_error(const std::vector<Pmf>& laws, const StationaryDist& pi) {
  const std::size_t n = laws.size() - 1;
  double delta = 0.0;
  for (std::size_t start = 0; start <= n; ++start) {
    const double weight = pi.marginal(start);
    if (weight == 0.0) continue;
    double wrong = 0.0;
    for (std::size_t end = 0; end <= n; ++end) {
      wrong += laws[start](static_cast<long>(end)) * static_cast<double>(n - end);
    }
    delta += weight * wrong / static_cast<double>(n);
  }
  return std::clamp(delta, 0.0, 1.0);
}

double average_error(const ModelParams& params, const PolicyTable& policy,
                     const StationaryDist& pi) {
  return average_error(end_of_cycle_laws(params, policy), pi);
}

ChainAnalysis analyze(const ModelParams& params, const PolicyTable& policy) {
  ChainAnalysis out;
  out.laws = end_of_cycle_laws(params, policy);
  out.chain = build_chain(params.n, params.p, out.laws);
  out.stationary = stationary(out.chain, params.solve_tol);
  out.delta = average_error(out.laws, out.stationary);
  return out;
}

double no_gossip_baseline(const ModelParams& params, const PolicyTable& policy) {
  return analyze(params.with_lambda(0.0), policy).delta;
}

bool has_positive_diagonal(const TransitionMatrix& chain) {
  return (chain.entries.diagonal().array() > 0.0).all();
}

namespace {

bool reaches_all(const TransitionMatrix& chain, bool reversed) {
  const auto dim = static_cast<Eigen::Index>(chain.dimension());
  std::vector<bool> seen(static_cast<std::size_t>(dim), false);
  std::queue<Eigen::Index> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!frontier.empty()) {
    const Eigen::Index a = frontier.front();
    frontier.pop();
    for (Eigen::Index b = 0; b < dim; ++b) {
      const double w = reversed ? chain.entries(b, a) : chain.entries(a, b);
      if (w > 0.0 && !seen[static_cast<std::size_t>(b)]) {
        seen[static_cast<std::size_t>(b)] = true;
        ++count;
        frontier.push(b);
      }
    }
  }
  return count == static_cast<std::size_t>(dim);
}

}  // namespace

bool is_irreducible(const TransitionMatrix& chain) {
  return reaches_all(chain, false) && reaches_all(chain, true);
}

std::string to_string(SolveMethod method) {
  return method == SolveMethod::kPowerIteration ? "power-iteration" : "direct";
}

}  // namespace gossip
