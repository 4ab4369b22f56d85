// Truth-table Boolean functions: generating functions of marker CA rules,
// the local rules they induce, Wolfram codes, weight and nonlinearity.
//
// Index convention used everywhere: an input vector (x_0,...,x_{m-1}) read
// left to right maps to idx = sum_i x_i * 2^(m-1-i), i.e. the leftmost
// variable is the most significant bit of the table index.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "revca/bittable.hpp"
#include "revca/rng.hpp"

namespace revca {

inline std::uint32_t input_index(const std::vector<int>& x) {
  std::uint32_t idx = 0;
  for (int b : x) idx = (idx << 1) | static_cast<std::uint32_t>(b & 1);
  return idx;
}

inline std::vector<int> input_vector(std::uint32_t idx, int nvars) {
  std::vector<int> x(nvars);
  for (int i = 0; i < nvars; ++i) x[i] = (idx >> (nvars - 1 - i)) & 1;
  return x;
}

// Boolean function g of the d-1 cells surrounding the origin of a marker
// CA neighborhood. Immutable after construction.
class GeneratingFunction {
 public:
  GeneratingFunction(int num_vars, BitTable table)
      : num_vars_(num_vars), table_(std::move(table)) {
    if (num_vars < 1 || num_vars > 30)
      throw std::invalid_argument("GeneratingFunction: num_vars out of range");
    if (table_.size() != (std::size_t{1} << num_vars))
      throw std::invalid_argument("GeneratingFunction: table length != 2^num_vars");
  }

  static GeneratingFunction constant_zero(int num_vars) {
    return GeneratingFunction(num_vars, BitTable(std::size_t{1} << num_vars));
  }

  static GeneratingFunction constant_one(int num_vars) {
    return GeneratingFunction(num_vars, BitTable(std::size_t{1} << num_vars, true));
  }

  static GeneratingFunction from_support(int num_vars, const std::vector<std::uint32_t>& supp) {
    BitTable t(std::size_t{1} << num_vars);
    for (std::uint32_t u : supp) {
      if (u >= t.size()) throw std::invalid_argument("from_support: index out of range");
      t.set(u, true);
    }
    return GeneratingFunction(num_vars, std::move(t));
  }

  static GeneratingFunction random(int num_vars, Rng& rng) {
    BitTable t(std::size_t{1} << num_vars);
    for (std::size_t w = 0; w < t.word_count(); ++w) t.mutable_word(w) = rng.next();
    // re-normalize the tail
    BitTable out(t.size());
    out |= t;
    return GeneratingFunction(num_vars, std::move(out));
  }

  int num_vars() const { return num_vars_; }
  const BitTable& table() const { return table_; }
  bool value(std::uint32_t idx) const { return table_.get(idx); }

  friend bool operator==(const GeneratingFunction& a, const GeneratingFunction& b) {
    return a.num_vars_ == b.num_vars_ && a.table_ == b.table_;
  }
  friend bool operator<(const GeneratingFunction& a, const GeneratingFunction& b) {
    return a.table_ < b.table_;
  }

 private:
  int num_vars_;
  BitTable table_;
};

// { x : g(x) = 1 }, each vector encoded by its table index, ascending.
inline std::vector<std::uint32_t> support(const GeneratingFunction& g) {
  std::vector<std::uint32_t> s;
  g.table().for_each_set([&](std::size_t i) { s.push_back(static_cast<std::uint32_t>(i)); });
  return s;
}

inline int hamming_weight(const GeneratingFunction& g) {
  return static_cast<int>(g.table().count());
}

// g'(x) = g(complement of x). On tables this is index reversal. Involutive.
inline GeneratingFunction complement_input(const GeneratingFunction& g) {
  return GeneratingFunction(g.num_vars(), g.table().reversed());
}

// Local rule of diameter d acting on a window (x_0,...,x_{d-1}) whose cell
// at the offset position is the one being updated.
class LocalRule {
 public:
  LocalRule(int diameter, int offset, BitTable table)
      : diameter_(diameter), offset_(offset), table_(std::move(table)) {
    if (diameter < 2 || diameter > 30)
      throw std::invalid_argument("LocalRule: diameter out of range");
    if (offset < 0 || offset >= diameter)
      throw std::invalid_argument("LocalRule: offset out of range");
    if (table_.size() != (std::size_t{1} << diameter))
      throw std::invalid_argument("LocalRule: table length != 2^diameter");
  }

  int diameter() const { return diameter_; }
  int offset() const { return offset_; }
  const BitTable& table() const { return table_; }
  bool value(std::uint32_t window_idx) const { return table_.get(window_idx); }

  friend bool operator==(const LocalRule& a, const LocalRule& b) {
    return a.diameter_ == b.diameter_ && a.offset_ == b.offset_ && a.table_ == b.table_;
  }

 private:
  int diameter_;
  int offset_;
  BitTable table_;
};

// Window index -> index of the same window with the bit at position omega
// deleted (a d-bit idx becomes a (d-1)-bit idx).
inline std::uint32_t delete_position(std::uint32_t widx, int d, int omega) {
  // position p carries bit (d-1-p); positions > omega keep their bit index,
  // positions < omega shift down by one.
  std::uint32_t low_mask = (omega == d - 1) ? 0u : ((1u << (d - 1 - omega)) - 1u);
  std::uint32_t low = widx & low_mask;
  std::uint32_t high = (widx >> (d - omega)) << (d - 1 - omega);
  return high | low;
}

// Inverse of delete_position: insert a gap (0 bit) at position omega.
inline std::uint32_t insert_gap(std::uint32_t nidx, int d, int omega) {
  std::uint32_t low_mask = (omega == d - 1) ? 0u : ((1u << (d - 1 - omega)) - 1u);
  std::uint32_t low = nidx & low_mask;
  std::uint32_t high = (nidx & ~low_mask) << 1;
  return high | low;
}

// f(x) = x_omega XOR g(x with position omega removed); diameter = m+1.
inline LocalRule local_rule_from_generating(const GeneratingFunction& g, int omega) {
  int m = g.num_vars();
  int d = m + 1;
  if (omega < 0 || omega > m) throw std::invalid_argument("local_rule_from_generating: omega out of range");
  BitTable t(std::size_t{1} << d);
  for (std::uint32_t w = 0; w < (1u << d); ++w) {
    bool origin = (w >> (d - 1 - omega)) & 1u;
    bool gv = g.value(delete_position(w, d, omega));
    if (origin ^ gv) t.set(w, true);
  }
  return LocalRule(d, omega, std::move(t));
}

// A local rule is a marker rule iff f(..,x_w=1,..) = NOT f(..,x_w=0,..)
// for every neighbor assignment; its generating function is f with the
// origin held at 0.
inline std::optional<GeneratingFunction> generating_function(const LocalRule& f) {
  int d = f.diameter();
  int omega = f.offset();
  int m = d - 1;
  BitTable g(std::size_t{1} << m);
  std::uint32_t origin_bit = 1u << (d - 1 - omega);
  for (std::uint32_t u = 0; u < (1u << m); ++u) {
    std::uint32_t w0 = insert_gap(u, d, omega);
    bool f0 = f.value(w0);
    bool f1 = f.value(w0 | origin_bit);
    if (f0 == f1) return std::nullopt;
    if (f0) g.set(u, true);
  }
  return GeneratingFunction(m, std::move(g));
}

// Integer encoding of a rule table: value = sum over windows of
// f(window) * 2^idx(window). Stored packed; the decimal form is only
// available while the table fits one machine word (d <= 6).
struct WolframCode {
  int diameter;
  BitTable bits;

  std::uint64_t to_decimal() const {
    if (bits.size() > 64) throw std::logic_error("WolframCode: too wide for decimal");
    return bits.as_word();
  }
};

inline WolframCode wolfram_code(const LocalRule& f) { return {f.diameter(), f.table()}; }

inline LocalRule rule_from_wolfram(std::uint64_t code, int d, int omega = -1) {
  if (d < 2 || d > 6) throw std::invalid_argument("rule_from_wolfram: need 2 <= d <= 6 for decimal codes");
  std::size_t bits = std::size_t{1} << d;
  if (bits < 64 && code >= (1ull << bits))
    throw std::invalid_argument("rule_from_wolfram: code out of range for diameter");
  if (omega < 0) omega = (d - 1) / 2;
  return LocalRule(d, omega, BitTable::from_word(code, bits));
}

inline LocalRule rule_from_wolfram(const WolframCode& code, int omega = -1) {
  if (omega < 0) omega = (code.diameter - 1) / 2;
  return LocalRule(code.diameter, omega, code.bits);
}

// --- nonlinearity ---------------------------------------------------------

// Minimum Hamming distance to the affine functions, by checking all
// 2^(m+1) of them. Intended for small m; the transform route below is the
// production path.
inline int nonlinearity_direct(const GeneratingFunction& g) {
  int m = g.num_vars();
  if (m > 5) throw std::invalid_argument("nonlinearity_direct: m too large");
  std::uint32_t n = 1u << m;
  int best = static_cast<int>(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (int c = 0; c < 2; ++c) {
      int dist = 0;
      for (std::uint32_t x = 0; x < n; ++x) {
        int affine = (std::popcount(a & x) & 1) ^ c;
        dist += affine != static_cast<int>(g.value(x));
      }
      best = std::min(best, dist);
    }
  }
  return best;
}

// Fast Walsh-Hadamard transform of (-1)^g; nl = 2^(m-1) - max|W|/2.
inline int nonlinearity_wht(const GeneratingFunction& g) {
  int m = g.num_vars();
  std::size_t n = std::size_t{1} << m;
  std::vector<std::int32_t> w(n);
  for (std::size_t x = 0; x < n; ++x) w[x] = g.value(static_cast<std::uint32_t>(x)) ? -1 : 1;
  for (std::size_t len = 1; len < n; len <<= 1)
    for (std::size_t i = 0; i < n; i += len << 1)
      for (std::size_t j = i; j < i + len; ++j) {
        std::int32_t a = w[j], b = w[j + len];
        w[j] = a + b;
        w[j + len] = a - b;
      }
  std::int32_t peak = 0;
  for (std::int32_t v : w) peak = std::max(peak, std::abs(v));
  return static_cast<int>((n - static_cast<std::size_t>(peak)) / 2);
}

inline int nonlinearity(const GeneratingFunction& g) {
  return g.num_vars() <= 4 ? nonlinearity_direct(g) : nonlinearity_wht(g);
}

// --- text codec ------------------------------------------------------------
//
// One rule per line: `d=<int> omega=<int> g=<hex>` where the hex spells the
// generating-function table with the most significant index first. A
// Wolfram-code form `d=<int> omega=<int> wolfram=<decimal>` is accepted for
// d <= 5.

struct ParsedRule {
  LocalRule rule;
  std::optional<GeneratingFunction> g;  // present when the rule is a marker rule
};

inline std::string rule_to_text(const GeneratingFunction& g, int omega) {
  std::ostringstream os;
  os << "d=" << (g.num_vars() + 1) << " omega=" << omega << " g=" << g.table().hex();
  return os.str();
}

inline ParsedRule parse_rule_text(const std::string& line) {
  int d = -1, omega = -1;
  std::string ghex;
  std::optional<std::uint64_t> wolfram;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("rule codec: expected key=value, got '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "d")
      d = std::stoi(val);
    else if (key == "omega")
      omega = std::stoi(val);
    else if (key == "g")
      ghex = val;
    else if (key == "wolfram")
      wolfram = std::stoull(val);
    else
      throw std::invalid_argument("rule codec: unknown key '" + key + "'");
  }
  if (d < 2) throw std::invalid_argument("rule codec: missing or bad d");
  if (omega < 0 || omega >= d) throw std::invalid_argument("rule codec: missing or bad omega");
  if (!ghex.empty()) {
    GeneratingFunction g(d - 1, BitTable::from_hex(ghex, std::size_t{1} << (d - 1)));
    return ParsedRule{local_rule_from_generating(g, omega), std::move(g)};
  }
  if (wolfram) {
    if (d > 5) throw std::invalid_argument("rule codec: wolfram form only accepted for d <= 5");
    LocalRule f = rule_from_wolfram(*wolfram, d, omega);
    return ParsedRule{f, generating_function(f)};
  }
  throw std::invalid_argument("rule codec: need g= or wolfram=");
}

}  // namespace revca
