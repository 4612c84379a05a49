#pragma once

// Portable random streams.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++
// standard. Each stream is seeded with std::seed_seq over the 32-bit halves
// of (seed, stream_id), so streams with different ids are independent and
// the same (seed, stream_id) reproduces bit-for-bit on every platform. All
// variates are derived by hand from raw engine output because the standard
// distributions are implementation-defined.

#include <cstdint>
#include <random>

namespace gossip {

/// Stream ids used by the simulator. Replica r of a run uses
/// kReplicaStreamBase + r.
inline constexpr std::uint64_t kReplicaStreamBase = 0x1000;

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_zero() { return 1.0 - uniform(); }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, bound), bound > 0, by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound);
  double exponential(double rate);
  /// Number of successes before the first failure, success probability rho.
  std::uint64_t geometric(double rho);

 private:
  std::mt19937_64 engine_;
};

}  // namespace gossip
