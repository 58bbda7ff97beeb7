#pragma once

#include <cstdint>
#include <random>

namespace trifuzz {

// Deterministic random source. All randomness in the engine flows through
// this wrapper; std::mt19937_64 output is specified bit-exactly, and the
// derived draws below avoid std::*_distribution (whose results are
// implementation-defined), so runs reproduce across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n). n == 0 is treated as 1.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    return next() % n;
  }

  // Uniform in [lo, hi] inclusive.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

  bool chance(double p) { return unit() < p; }

  // Uniform double in [0, 1) with 53 bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller, spare cached.
  double gauss();

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace trifuzz
