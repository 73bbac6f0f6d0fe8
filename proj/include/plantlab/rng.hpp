#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace plantlab {

/// splitmix64 finalizer applied to (seed, index): independent stream seeds for
/// trial `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Seeded 64-bit Mersenne Twister with portable derived draws. Every sampler
/// takes an explicit Rng; there is no global generator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const { return seed_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// One draw is consumed whatever p is, so streams do not depend on p.
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, bound), bound >= 1, by rejection.
  std::uint64_t below(std::uint64_t bound);

  /// Independent generator for sub-stream `index`.
  Rng split(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace plantlab
