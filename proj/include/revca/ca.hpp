// Finite periodic CA dynamics: global rule application, rotation, orbit
// detection, and the involution / bijectivity checks used to verify
// reversibility claims empirically.
#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "revca/bittable.hpp"
#include "revca/boolfun.hpp"
#include "revca/rng.hpp"

namespace revca {

// Length-n binary array with wrap-around indexing.
class Configuration {
 public:
  explicit Configuration(BitTable bits) : bits_(std::move(bits)) {}
  explicit Configuration(std::size_t n) : bits_(n) {}

  static Configuration from_string(std::string_view s) {
    return Configuration(BitTable::from_string(s));
  }
  static Configuration from_word(std::uint64_t x, std::size_t n) {
    return Configuration(BitTable::from_word(x, n));
  }

  std::size_t length() const { return bits_.size(); }
  bool cell(std::size_t i) const { return bits_.get(i % bits_.size()); }
  void set_cell(std::size_t i, bool v) { bits_.set(i % bits_.size(), v); }
  const BitTable& bits() const { return bits_; }
  std::string str() const { return bits_.str(); }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.bits_ == b.bits_;
  }

 private:
  BitTable bits_;
};

// Cyclic left rotation by s: output cell i = input cell (i + s) mod n.
inline Configuration rotate(const Configuration& x, std::int64_t s) {
  std::int64_t n = static_cast<std::int64_t>(x.length());
  if (n == 0) return x;
  std::int64_t shift = ((s % n) + n) % n;
  Configuration out(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    out.set_cell(static_cast<std::size_t>(i), x.cell(static_cast<std::size_t>((i + shift) % n)));
  return out;
}

namespace detail {

// One parallel update on a word-packed configuration, n <= 64. The window
// index slides: shift left, append the next cell on the right.
inline std::uint64_t apply_word(const BitTable& table, int d, int omega, int n, std::uint64_t x) {
  auto cell = [&](int i) -> std::uint32_t {
    int j = i % n;
    if (j < 0) j += n;
    return static_cast<std::uint32_t>((x >> j) & 1u);
  };
  std::uint32_t win_mask = (1u << d) - 1u;
  std::uint32_t idx = 0;
  for (int k = 0; k < d; ++k) idx = (idx << 1) | cell(-omega + k);
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i) {
    if (table.get(idx)) out |= 1ull << i;
    idx = ((idx << 1) | cell(i + 1 - omega + d - 1)) & win_mask;
  }
  return out;
}

}  // namespace detail

// F(x)_i = f(x_{i-omega}, ..., x_{i-omega+d-1}), indices mod n.
inline Configuration apply_global(const LocalRule& f, const Configuration& x) {
  int n = static_cast<int>(x.length());
  int d = f.diameter();
  if (n < d) throw std::invalid_argument("apply_global: array shorter than rule diameter");
  if (n <= 64)
    return Configuration::from_word(
        detail::apply_word(f.table(), d, f.offset(), n, x.bits().as_word()), x.length());
  std::uint32_t win_mask = (1u << d) - 1u;
  std::uint32_t idx = 0;
  auto cell = [&](long long i) { return x.cell(static_cast<std::size_t>(((i % n) + n) % n)); };
  for (int k = 0; k < d; ++k) idx = (idx << 1) | static_cast<std::uint32_t>(cell(-f.offset() + k));
  Configuration out(x.length());
  for (int i = 0; i < n; ++i) {
    if (f.value(idx)) out.set_cell(static_cast<std::size_t>(i), true);
    idx = ((idx << 1) | static_cast<std::uint32_t>(cell(i + 1 - f.offset() + d - 1))) & win_mask;
  }
  return out;
}

struct OrbitInfo {
  std::uint64_t pre_period;
  std::uint64_t cycle_length;
};

// Brent cycle detection on the trajectory of x. pre_period is 0 exactly
// when x lies on a cycle.
inline OrbitInfo orbit(const LocalRule& f, const Configuration& x) {
  auto step = [&](const Configuration& c) { return apply_global(f, c); };
  std::uint64_t power = 1, lam = 1;
  Configuration tortoise = x;
  Configuration hare = step(x);
  while (!(tortoise == hare)) {
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = step(hare);
    ++lam;
  }
  tortoise = x;
  hare = x;
  for (std::uint64_t i = 0; i < lam; ++i) hare = step(hare);
  std::uint64_t mu = 0;
  while (!(tortoise == hare)) {
    tortoise = step(tortoise);
    hare = step(hare);
    ++mu;
  }
  return {mu, lam};
}

// F(F(x)) == x for all 2^n configurations. Budget-guarded.
inline bool is_involution_exhaustive(const LocalRule& f, int n) {
  if (n < f.diameter()) throw std::invalid_argument("is_involution: n < diameter");
  if (n > 24) throw std::invalid_argument("is_involution: exhaustive mode limited to n <= 24");
  const BitTable& t = f.table();
  int d = f.diameter(), w = f.offset();
  for (std::uint64_t x = 0; x < (1ull << n); ++x) {
    std::uint64_t y = detail::apply_word(t, d, w, n, x);
    if (detail::apply_word(t, d, w, n, y) != x) return false;
  }
  return true;
}

// F(F(x)) == x on `count` configurations drawn from the seeded generator.
inline bool is_involution_sampled(const LocalRule& f, int n, std::uint64_t count, std::uint64_t seed) {
  if (n < f.diameter()) throw std::invalid_argument("is_involution: n < diameter");
  Rng rng(seed);
  const BitTable& t = f.table();
  int d = f.diameter(), w = f.offset();
  if (n <= 64) {
    std::uint64_t mask = n == 64 ? ~0ull : (1ull << n) - 1ull;
    for (std::uint64_t k = 0; k < count; ++k) {
      std::uint64_t x = rng.next() & mask;
      std::uint64_t y = detail::apply_word(t, d, w, n, x);
      if (detail::apply_word(t, d, w, n, y) != x) return false;
    }
    return true;
  }
  for (std::uint64_t k = 0; k < count; ++k) {
    Configuration x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x.set_cell(static_cast<std::size_t>(i), rng.coin());
    if (!(apply_global(f, apply_global(f, x)) == x)) return false;
  }
  return true;
}

// Injectivity of the global map over all 2^n configurations, via a
// visited-set of images.
inline bool is_bijective(const LocalRule& f, int n) {
  if (n < f.diameter()) throw std::invalid_argument("is_bijective: n < diameter");
  if (n > 24) throw std::invalid_argument("is_bijective: limited to n <= 24");
  BitTable seen(std::size_t{1} << n);
  const BitTable& t = f.table();
  int d = f.diameter(), w = f.offset();
  for (std::uint64_t x = 0; x < (1ull << n); ++x) {
    std::uint64_t y = detail::apply_word(t, d, w, n, x);
    if (seen.get(y)) return false;
    seen.set(y, true);
  }
  return true;
}

// Space-time trace: one row of 0/1 per step, starting with x itself.
inline void write_trace(const LocalRule& f, const Configuration& x, int steps, std::ostream& os) {
  Configuration c = x;
  os << c.str() << '\n';
  for (int t = 0; t < steps; ++t) {
    c = apply_global(f, c);
    os << c.str() << '\n';
  }
}

}  // namespace revca
