#pragma once

#include <cstdint>

namespace dmfsense {

// SplitMix64. Small, seedable, and identical on every platform, which the
// byte-identical output contract needs; std::normal_distribution is
// implementation-defined so it cannot be used here.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Stable per-(stream, item) seed derivation; `stream` is a scan index or
/// calibration class tag, `item` a channel index.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                                 std::uint64_t item) {
  std::uint64_t h = base;
  h = mix64(h ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
  h = mix64(h ^ (0xD1B54A32D192ED03ULL * (item + 1)));
  return h;
}

/// Standard-normal sampler (Box-Muller over SplitMix64), reproducible
/// bit-for-bit for a fixed seed.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

  double next();

 private:
  SplitMix64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace dmfsense
