#ifndef CFSVD_RNG_HPP
#define CFSVD_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace cfsvd {

// Thin wrapper around mt19937_64 with hand-rolled draws.  std::shuffle and
// the std distributions have implementation-defined sequences, which would
// make seeded outputs differ across standard libraries; everything here is
// pinned to the mt19937_64 bit stream.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound), bound >= 1.  Rejection sampling over a
  // power-of-two mask, so the result is unbiased.
  std::uint64_t bounded(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      std::uint64_t v = engine_() & mask;
      if (v < bound) return v;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (polar form avoided to keep the draw
  // count per call fixed).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Fisher-Yates shuffle of [first, first+n).
  template <typename T>
  void shuffle(T* first, std::size_t n) {
    for (std::size_t i = n; i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(first[i - 1], first[j]);
    }
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cfsvd

#endif
