#pragma once

#include <cstdint>
#include <random>

namespace netlap {

/// Independent random streams are addressed by (seed, stage, a, b). The
/// stream seed is
///
///   h0 = mix(seed), h1 = mix(h0 ^ stage), h2 = mix(h1 ^ a), h3 = mix(h2 ^ b)
///
/// with `mix` the SplitMix64 finalizer applied to (x + 0x9E3779B97F4A7C15).
/// Each stream drives its own std::mt19937_64, so results never depend on the
/// order in which streams are consumed.
enum class Stage : std::uint64_t {
  kTopology = 1,
  kRewire = 2,
  kSigma = 3,
  kSeries = 4,  // a = replicate, b = group
  kSubject = 5, // a = subject within a series batch
  kClt = 6,     // a = replicate
  kUser = 7,    // free for callers (tests, tools)
};

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t stream_seed(std::uint64_t seed, Stage stage, std::uint64_t a = 0,
                          std::uint64_t b = 0) noexcept;
Rng make_rng(std::uint64_t seed, Stage stage, std::uint64_t a = 0, std::uint64_t b = 0);

}  // namespace netlap
