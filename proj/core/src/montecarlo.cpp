#include "gossip/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "gossip/csv.hpp"
#include "gossip/parallel.hpp"

namespace gossip {

std::string to_string(SimMode mode) {
  return mode == SimMode::kPaperFaithful ? "paper-faithful" : "event-driven";
}

SimMode parse_sim_mode(const std::string& text) {
  if (text == "paper-faithful") return SimMode::kPaperFaithful;
  if (text == "event-driven") return SimMode::kEventDriven;
  throw std::invalid_argument("unknown simulation mode '" + text + "'");
}

std::size_t CycleState::correct() const {
  return static_cast<std::size_t>(std::count(
      node_bits.begin(), node_bits.end(), static_cast<std::uint8_t>(source_bit)));
}

namespace {

std::uint64_t poisson_arrivals(double rate, double horizon, RngStream& rng) {
  if (rate <= 0.0) return 0;
  std::uint64_t count = 0;
  double t = rng.exponential(rate);
  while (t <= horizon) {
    ++count;
    t += rng.exponential(rate);
  }
  return count;
}

}  // namespace

CycleResult simulate_cycle(const CycleState& state, const ModelParams& params,
                           const PolicyTable& policy, SimMode mode, RngStream& rng) {
  const std::size_t n = params.n;
  if (state.node_bits.size() != n) throw std::invalid_argument("node_bits length != n");
  const auto ratios = derived_ratios(params);
  const auto source = static_cast<std::uint8_t>(state.source_bit);

  CycleResult out;
  out.next = state;
  auto& bits = out.next.node_bits;
  out.start_correct = state.correct();
  const std::size_t budget = std::min(policy[out.start_correct], n - out.start_correct);

  // Source phase: each race won corrects the next wrong receiver in index
  // order (wrong receivers are exchangeable on the complete graph).
  std::vector<bool> from_source(n, false);
  std::size_t cursor = 0;
  std::size_t sent = 0;
  bool source_changed = false;
  while (sent < budget) {
    if (!rng.bernoulli(ratios.rho_s)) {
      source_changed = true;
      break;
    }
    while (bits[cursor] == source) ++cursor;
    bits[cursor] = source;
    from_source[cursor] = true;
    ++sent;
  }

  if (!source_changed) {
    out.gossiped = true;
    const std::vector<std::uint8_t> phase_start = bits;
    const double horizon =
        mode == SimMode::kEventDriven ? rng.exponential(params.lambda_e) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (from_source[i]) continue;
      const std::uint64_t updates =
          mode == SimMode::kPaperFaithful
              ? rng.geometric(ratios.rho_g)
              : poisson_arrivals(params.lambda, horizon, rng);
      if (updates == 0) continue;
      std::uint64_t matching = 0;
      for (std::uint64_t k = 0; k < updates; ++k) {
        auto peer = static_cast<std::size_t>(rng.below(n - 1));
        if (peer >= i) ++peer;
        if (phase_start[peer] == source) ++matching;
      }
      const std::uint64_t other = updates - matching;
      if (matching > other) {
        bits[i] = source;
      } else if (matching < other) {
        bits[i] = static_cast<std::uint8_t>(1 - source);
      } else {
        bits[i] = rng.bernoulli(0.5) ? source : static_cast<std::uint8_t>(1 - source);
      }
    }
  }

  out.end_correct = out.next.correct();
  out.error = static_cast<double>(n - out.end_correct) / static_cast<double>(n);
  if (rng.bernoulli(params.p)) out.next.source_bit = 1 - state.source_bit;
  ++out.next.cycle_index;
  return out;
}

McEstimate merge(const McEstimate& a, const McEstimate& b) {
  if (a.cycles == 0) return b;
  if (b.cycles == 0) return a;
  McEstimate out = a;
  const double ca = static_cast<double>(a.cycles);
  const double cb = static_cast<double>(b.cycles);
  out.cycles = a.cycles + b.cycles;
  out.mean_error = (ca * a.mean_error + cb * b.mean_error) / (ca + cb);
  out.std_error = std::sqrt(ca * ca * a.std_error * a.std_error +
                            cb * cb * b.std_error * b.std_error) /
                  (ca + cb);
  return out;
}

McEstimate estimate_error(const ModelParams& params, const PolicyTable& policy,
                          SimMode mode, const McOptions& options,
                          std::uint64_t stream_id) {
  if (options.cycles == 0) throw std::invalid_argument("cycles must be >= 1");
  RngStream rng(options.seed, stream_id);
  CycleState state;
  state.node_bits.assign(params.n, 0);

  for (std::uint64_t c = 0; c < options.burn_in; ++c) {
    state = simulate_cycle(state, params, policy, mode, rng).next;
  }

  if (options.trace != nullptr) *options.trace << "cycle_index,x_s,N,N_end,error\n";
  const std::uint64_t batches = std::min<std::uint64_t>(kBatchCount, options.cycles);
  std::vector<double> batch_sum(batches, 0.0);
  std::vector<std::uint64_t> batch_len(batches, 0);
  double total = 0.0;
  for (std::uint64_t c = 0; c < options.cycles; ++c) {
    const std::uint64_t index = state.cycle_index;
    const int source_bit = state.source_bit;
    CycleResult result = simulate_cycle(state, params, policy, mode, rng);
    const std::uint64_t b = c * batches / options.cycles;
    batch_sum[b] += result.error;
    ++batch_len[b];
    total += result.error;
    if (options.trace != nullptr) {
      *options.trace << index << ',' << source_bit << ',' << result.start_correct << ','
                     << result.end_correct << ',' << format_number(result.error) << '\n';
    }
    state = std::move(result.next);
  }

  McEstimate out;
  out.cycles = options.cycles;
  out.burn_in = options.burn_in;
  out.seed = options.seed;
  out.mode = mode;
  out.mean_error = total / static_cast<double>(options.cycles);
  if (batches > 1) {
    double mean_of_means = 0.0;
    for (std::uint64_t b = 0; b < batches; ++b) {
      mean_of_means += batch_sum[b] / static_cast<double>(batch_len[b]);
    }
    mean_of_means /= static_cast<double>(batches);
    double ss = 0.0;
    for (std::uint64_t b = 0; b < batches; ++b) {
      const double d = batch_sum[b] / static_cast<double>(batch_len[b]) - mean_of_means;
      ss += d * d;
    }
    out.std_error =
        std::sqrt(ss / (static_cast<double>(batches) * static_cast<double>(batches - 1)));
  }
  return out;
}

McEstimate estimate_error_replicas(const ModelParams& params, const PolicyTable& policy,
                                   SimMode mode, const McOptions& options,
                                   std::size_t replicas, std::size_t threads) {
  if (replicas == 0) throw std::invalid_argument("replicas must be >= 1");
  if (options.cycles < replicas) throw std::invalid_argument("fewer cycles than replicas");
  std::vector<McEstimate> parts(replicas);
  parallel_for(replicas, threads, [&](std::size_t r) {
    McOptions local = options;
    local.trace = nullptr;
    local.cycles = options.cycles / replicas + (r < options.cycles % replicas ? 1 : 0);
    parts[r] = estimate_error(params, policy, mode, local, kReplicaStreamBase + r);
  });
  McEstimate out = parts.front();
  for (std::size_t r = 1; r < replicas; ++r) out = merge(out, parts[r]);
  return out;
}

}  // namespace gossip
