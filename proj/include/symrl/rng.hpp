#ifndef SYMRL_RNG_HPP_
#define SYMRL_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace symrl {

// Deterministic random stream. Streams for parallel workers are derived as
// hash(seed, stream_id) so results do not depend on scheduling order.
// Uniform and normal draws are implemented directly on top of the engine's
// 64-bit output; std::*_distribution is avoided because its output is
// implementation-defined and would not be reproducible across toolchains.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(mix64(seed)) {}

  static RandomStream derive(std::uint64_t seed, std::uint64_t stream_id) {
    return RandomStream(mix64(seed + 0x9E3779B97F4A7C15ULL * (stream_id + 1)));
  }

  // Named sub-streams ("action", "noise", ...) hashed by tag.
  static RandomStream derive(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t tag) {
    return derive(mix64(seed ^ mix64(tag)), stream_id);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive integer range via rejection-free scaling (bias negligible here).
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform() * static_cast<double>(hi - lo + 1));
  }

  // Standard normal via Box-Muller; the spare value is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  // splitmix64 finalizer; spreads low-entropy seeds over the full state space.
  static std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace symrl

#endif  // SYMRL_RNG_HPP_
