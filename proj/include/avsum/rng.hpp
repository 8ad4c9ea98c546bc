#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace avsum {

// Deterministic PRNG with a fixed bit-level contract. The standard library
// distributions are implementation-defined, so anything that lands in a file
// (corpus synthesis, splits, weight init) draws from this instead.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  // splitmix64 step
  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; pairs are cached so draws stay aligned with the stream.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Unbiased integer in [0, n) via rejection.
  uint64_t below(uint64_t n) {
    const uint64_t threshold = (0ULL - n) % n;
    for (;;) {
      const uint64_t x = next_u64();
      if (x >= threshold) return x % n;
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Decorrelated child stream, e.g. one per video so parallel corpus
  // generation is order-independent.
  Rng fork(uint64_t stream) {
    uint64_t z = state_ ^ (0x510e527fade682d1ULL + stream * 0x2545f4914f6cdd1dULL);
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
    return Rng(z ^ (z >> 33));
  }

 private:
  uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace avsum
