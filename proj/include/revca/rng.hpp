// Seeded random source with self-contained bounded-draw helpers, so that a
// given seed reproduces the same stream on every platform and stdlib.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace revca {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, n) by rejection sampling.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  bool coin() { return gen_() & 1u; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace revca
