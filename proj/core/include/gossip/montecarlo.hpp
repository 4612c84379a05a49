#pragma once

// Direct simulation of update cycles.
//
// Two fidelity modes:
//  - kPaperFaithful draws each gossiping receiver's update count K_i
//    independently from the geometric law, matching the product-form
//    assumption of the analytic chain. Used to validate the chain.
//  - kEventDriven draws one gossip-phase duration T ~ Exp(lambda_e) per cycle
//    and gives every receiver a Poisson(lambda) arrival process on [0, T], so
//    all K_i share T. It measures how much the independence assumption costs.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gossip/chain.hpp"
#include "gossip/model.hpp"
#include "gossip/rng.hpp"

namespace gossip {

enum class SimMode { kPaperFaithful, kEventDriven };

std::string to_string(SimMode mode);
/// Accepts "paper-faithful" and "event-driven".
SimMode parse_sim_mode(const std::string& text);

struct CycleState {
  int source_bit = 0;
  std::vector<std::uint8_t> node_bits;
  std::uint64_t cycle_index = 0;

  /// Receivers whose bit equals the source's.
  std::size_t correct() const;
};

struct CycleResult {
  CycleState next;  ///< state at the start of the following cycle
  std::size_t start_correct = 0;  ///< N
  std::size_t end_correct = 0;    ///< N''
  double error = 0.0;             ///< (n - N'') / n, before the source flips
  bool gossiped = false;
};

CycleResult simulate_cycle(const CycleState& state, const ModelParams& params,
                           const PolicyTable& policy, SimMode mode, RngStream& rng);

struct McEstimate {
  double mean_error = 0.0;
  double std_error = 0.0;
  std::uint64_t cycles = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t seed = 0;
  SimMode mode = SimMode::kPaperFaithful;
};

/// Combines two independent estimates, weighting by cycle count. Associative
/// and commutative in mean and standard error.
McEstimate merge(const McEstimate& a, const McEstimate& b);

inline constexpr std::uint64_t kDefaultBurnIn = 1000;
inline constexpr std::size_t kBatchCount = 32;

struct McOptions {
  std::uint64_t cycles = 100'000;
  std::uint64_t burn_in = kDefaultBurnIn;
  std::uint64_t seed = 1;
  /// When set, one CSV row per retained cycle:
  /// cycle_index,x_s,N,N_end,error
  std::ostream* trace = nullptr;
};

/// Long-run average error from one replica. The standard error comes from
/// kBatchCount batch means over the retained cycles. Starts from all bits 0.
McEstimate estimate_error(const ModelParams& params, const PolicyTable& policy,
                          SimMode mode, const McOptions& options,
                          std::uint64_t stream_id = kReplicaStreamBase);

/// Splits `options.cycles` over `replicas` independent streams, runs them on
/// up to `threads` workers and merges in replica order, so the result does
/// not depend on `threads`. Each replica runs its own burn-in. Tracing is
/// not supported here.
McEstimate estimate_error_replicas(const ModelParams& params, const PolicyTable& policy,
                                   SimMode mode, const McOptions& options,
                                   std::size_t replicas, std::size_t threads);

}  // namespace gossip
