#include "netlap/rng.hpp"

namespace netlap {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, Stage stage, std::uint64_t a,
                          std::uint64_t b) noexcept {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stage));
  h = splitmix64(h ^ a);
  return splitmix64(h ^ b);
}

Rng make_rng(std::uint64_t seed, Stage stage, std::uint64_t a, std::uint64_t b) {
  return Rng(stream_seed(seed, stage, a, b));
}

}  // namespace netlap
