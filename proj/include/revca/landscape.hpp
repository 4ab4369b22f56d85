// Landscapes: width-d flip patterns of marker CA rules, the compatibility
// partial order over them, the neighborhood tabulation, and the greedy
// don't-care merge of landscape sets.
//
// Text form: `0*10` with `*` the origin and `-` a don't-care.
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "revca/boolfun.hpp"

namespace revca {

enum class Symbol : std::uint8_t { Zero = 0, One = 1, DontCare = 2, Star = 3 };

class Landscape {
 public:
  explicit Landscape(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    center_ = -1;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i] == Symbol::Star) {
        if (center_ >= 0) throw std::invalid_argument("Landscape: more than one star");
        center_ = static_cast<int>(i);
      }
    }
    if (center_ < 0) throw std::invalid_argument("Landscape: no star");
  }

  // Atomic landscape of the given width: the neighbor pattern `neighbors`
  // (a (width-1)-variable input index) with the star inserted at `center`.
  static Landscape atomic(int width, int center, std::uint32_t neighbors) {
    if (center < 0 || center >= width) throw std::invalid_argument("Landscape::atomic: bad center");
    std::vector<Symbol> sym(static_cast<std::size_t>(width));
    int k = 0;
    for (int p = 0; p < width; ++p) {
      if (p == center) {
        sym[p] = Symbol::Star;
      } else {
        int bit = (neighbors >> (width - 2 - k)) & 1u;
        sym[p] = bit ? Symbol::One : Symbol::Zero;
        ++k;
      }
    }
    return Landscape(std::move(sym));
  }

  static Landscape parse(std::string_view s) {
    std::vector<Symbol> sym;
    sym.reserve(s.size());
    for (char c : s) {
      switch (c) {
        case '0': sym.push_back(Symbol::Zero); break;
        case '1': sym.push_back(Symbol::One); break;
        case '-': sym.push_back(Symbol::DontCare); break;
        case '*': sym.push_back(Symbol::Star); break;
        default: throw std::invalid_argument("Landscape::parse: bad symbol");
      }
    }
    return Landscape(std::move(sym));
  }

  std::string str() const {
    std::string s;
    s.reserve(symbols_.size());
    for (Symbol y : symbols_) s.push_back("01-*"[static_cast<int>(y)]);
    return s;
  }

  int width() const { return static_cast<int>(symbols_.size()); }
  int center() const { return center_; }
  Symbol at(int i) const { return symbols_[static_cast<std::size_t>(i)]; }

  bool is_atomic() const {
    return std::none_of(symbols_.begin(), symbols_.end(),
                        [](Symbol y) { return y == Symbol::DontCare; });
  }

  bool is_fixed(int i) const { return at(i) == Symbol::Zero || at(i) == Symbol::One; }

  friend bool operator==(const Landscape& a, const Landscape& b) {
    return a.symbols_ == b.symbols_;
  }
  friend bool operator<(const Landscape& a, const Landscape& b) {
    return a.str() < b.str();
  }

 private:
  std::vector<Symbol> symbols_;
  int center_;
};

inline void require_comparable(const Landscape& a, const Landscape& b) {
  if (a.width() != b.width() || a.center() != b.center())
    throw std::invalid_argument("landscapes differ in width or center");
}

// L <=_C M: at every non-star position L matches M exactly, or L is fixed
// where M has a don't-care. Smaller means more specific.
inline bool leq_c(const Landscape& l, const Landscape& m) {
  require_comparable(l, m);
  for (int i = 0; i < l.width(); ++i) {
    if (i == l.center()) continue;
    if (l.at(i) == m.at(i)) continue;
    if (l.is_fixed(i) && m.at(i) == Symbol::DontCare) continue;
    return false;
  }
  return true;
}

inline bool compatible(const Landscape& a, const Landscape& b) {
  return leq_c(a, b) || leq_c(b, a);
}

// One atomic landscape per support vector of g, in table-index order.
inline std::vector<Landscape> atomic_landscapes(const GeneratingFunction& g, int omega) {
  int d = g.num_vars() + 1;
  if (omega < 0 || omega >= d) throw std::invalid_argument("atomic_landscapes: omega out of range");
  std::vector<Landscape> out;
  g.table().for_each_set([&](std::size_t u) {
    out.push_back(Landscape::atomic(d, omega, static_cast<std::uint32_t>(u)));
  });
  return out;
}

// The d-1 landscapes seen by the cells surrounding a cell that is in the
// atomic landscape L. The cell at position j of L sees L's pattern
// displaced by j - center in its own window; positions that fall outside
// L, or onto either star, are unknown to it.
inline std::vector<Landscape> neighborhood_landscapes(const Landscape& l) {
  if (!l.is_atomic()) throw std::invalid_argument("neighborhood_landscapes: landscape not atomic");
  int d = l.width();
  int w = l.center();
  std::vector<Landscape> out;
  out.reserve(static_cast<std::size_t>(d - 1));
  for (int j = 0; j < d; ++j) {
    if (j == w) continue;
    int s = j - w;
    std::vector<Symbol> sym(static_cast<std::size_t>(d), Symbol::DontCare);
    sym[static_cast<std::size_t>(w)] = Symbol::Star;
    for (int q = 0; q < d; ++q) {
      if (q == w) continue;
      int src = q + s;
      if (src < 0 || src >= d || src == w) continue;
      sym[static_cast<std::size_t>(q)] = l.at(src);
    }
    out.push_back(Landscape(std::move(sym)));
  }
  return out;
}

// All atomic landscapes a landscape describes (don't-cares expanded).
inline std::vector<Landscape> expand(const Landscape& l) {
  std::vector<int> free_pos;
  for (int i = 0; i < l.width(); ++i)
    if (l.at(i) == Symbol::DontCare) free_pos.push_back(i);
  std::vector<Landscape> out;
  for (std::uint32_t m = 0; m < (1u << free_pos.size()); ++m) {
    std::vector<Symbol> sym;
    sym.reserve(static_cast<std::size_t>(l.width()));
    for (int i = 0; i < l.width(); ++i) sym.push_back(l.at(i));
    for (std::size_t k = 0; k < free_pos.size(); ++k)
      sym[static_cast<std::size_t>(free_pos[k])] = (m >> k) & 1u ? Symbol::One : Symbol::Zero;
    out.push_back(Landscape(std::move(sym)));
  }
  return out;
}

namespace detail {

// Eligible iff the pair differs in exactly one non-star position, both
// fixed there with opposite values, every other position identical.
inline int merge_position(const Landscape& a, const Landscape& b) {
  int pos = -1;
  for (int i = 0; i < a.width(); ++i) {
    if (a.at(i) == b.at(i)) continue;
    if (!a.is_fixed(i) || !b.is_fixed(i)) return -1;
    if (pos >= 0) return -1;
    pos = i;
  }
  return pos;
}

}  // namespace detail

// Greedy fixpoint of the distance-1 merge: scan pairs in lexicographic
// symbol order, replace the first eligible pair by one landscape with a
// don't-care at the differing position, restart. Expansion-preserving.
inline std::vector<Landscape> merge_landscapes(std::vector<Landscape> ls) {
  for (std::size_t i = 1; i < ls.size(); ++i) require_comparable(ls[0], ls[i]);
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < ls.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < ls.size() && !merged; ++j) {
        int pos = detail::merge_position(ls[i], ls[j]);
        if (pos < 0) continue;
        std::vector<Symbol> sym;
        for (int q = 0; q < ls[i].width(); ++q) sym.push_back(ls[i].at(q));
        sym[static_cast<std::size_t>(pos)] = Symbol::DontCare;
        ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(j));
        ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(i));
        ls.push_back(Landscape(std::move(sym)));
        std::sort(ls.begin(), ls.end());
        ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
        merged = true;
      }
    }
  }
  return ls;
}

}  // namespace revca
