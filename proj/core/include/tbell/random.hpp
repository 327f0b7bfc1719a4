#pragma once

#include <cstdint>
#include <limits>

namespace tbell {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 output mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Hashes a parent seed together with an ordered list of integer keys.
/// Used to derive per-experiment, per-point and per-trial substreams so that
/// every trial's randomness depends only on its coordinates, never on the
/// order in which trials are scheduled.
template <typename... Keys>
constexpr std::uint64_t derive_seed(std::uint64_t parent, Keys... keys) noexcept {
  std::uint64_t h = mix64(parent + kGoldenGamma);
  ((h = mix64(h ^ mix64(static_cast<std::uint64_t>(keys) + kGoldenGamma))), ...);
  return h;
}

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator, so it can drive
/// the <random> distributions directly. Cheap to construct, which is what
/// makes one stream per trial affordable.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  constexpr explicit RandomStream(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace tbell
