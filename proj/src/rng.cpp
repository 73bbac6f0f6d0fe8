#include "plantlab/rng.hpp"

namespace plantlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) { return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)); }

std::uint64_t Rng::below(std::uint64_t bound) {
  // largest multiple of bound that fits, minus one
  const std::uint64_t limit = max() - (max() % bound + 1) % bound;
  std::uint64_t x = engine_();
  while (x > limit) x = engine_();
  return x % bound;
}

}  // namespace plantlab
