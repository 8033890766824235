#pragma once

#include <cmath>
#include <cstdint>

namespace cdrt {

/// Counter-based per-trial random stream.  Each (seed, trial) pair opens an
/// independent substream, so parallel and serial runs aggregate identically.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial) {
    state_ = mix(mix(seed + 0x9E3779B97F4A7C15ULL) ^ mix(trial + 0xD1B54A32D192ED03ULL));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform in (0, 1).
  double next_uniform() {
    const std::uint64_t bits = next_u64() >> 11;  // 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; pairs are cached.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cdrt
