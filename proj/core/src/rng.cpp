#include "gossip/rng.hpp"

#include <cmath>
#include <limits>

namespace gossip {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  engine_.seed(seq);
}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double RngStream::exponential(double rate) {
  return -std::log(uniform_open_zero()) / rate;
}

std::uint64_t RngStream::geometric(double rho) {
  if (rho <= 0.0) return 0;
  // Inversion: P(X >= k) = rho^k.
  return static_cast<std::uint64_t>(
      std::floor(std::log(uniform_open_zero()) / std::log(rho)));
}

}  // namespace gossip
