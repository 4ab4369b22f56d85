// De Bruijn graph representation of local rules, labeling diagnostics for
// explicit permutations, and the reversibility decision via strongly
// connected components of the label-matched product graph.
//
// Vertices are the 2^(d-1) binary strings; the edge v1 -> v2 exists when
// the last d-2 bits of v1 equal the first d-2 bits of v2, and is identified
// with the d-bit overlap word z = v1 (+) last bit of v2. Edge z therefore
// runs from z >> 1 to z & (2^(d-1) - 1).
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "revca/boolfun.hpp"

namespace revca {

class DeBruijnGraph {
 public:
  explicit DeBruijnGraph(int order) : order_(order), labels_(std::size_t{1} << order) {
    if (order < 2 || order > 26) throw std::invalid_argument("DeBruijnGraph: order out of range");
  }

  int order() const { return order_; }
  std::uint32_t vertex_count() const { return 1u << (order_ - 1); }
  std::uint32_t edge_count() const { return 1u << order_; }

  std::uint32_t edge_from(std::uint32_t z) const { return z >> 1; }
  std::uint32_t edge_to(std::uint32_t z) const { return z & (vertex_count() - 1u); }

  void add_label(std::uint32_t z, bool bit) { ++labels_[z][bit ? 1 : 0]; }
  std::uint64_t zeros(std::uint32_t z) const { return labels_[z][0]; }
  std::uint64_t ones(std::uint32_t z) const { return labels_[z][1]; }

  bool is_consistent() const {
    for (const auto& l : labels_)
      if (l[0] > 0 && l[1] > 0) return false;
    return true;
  }

  // The rule spelled by the unique labels; requires consistency and at
  // least one label per edge.
  std::optional<LocalRule> recovered_rule(int omega) const {
    BitTable t(std::size_t{1} << order_);
    for (std::uint32_t z = 0; z < edge_count(); ++z) {
      if (labels_[z][0] > 0 && labels_[z][1] > 0) return std::nullopt;
      if (labels_[z][0] == 0 && labels_[z][1] == 0) return std::nullopt;
      if (labels_[z][1] > 0) t.set(z, true);
    }
    return LocalRule(order_, omega, std::move(t));
  }

 private:
  int order_;
  std::vector<std::array<std::uint64_t, 2>> labels_;
};

inline DeBruijnGraph build_debruijn(const LocalRule& f) {
  DeBruijnGraph g(f.diameter());
  for (std::uint32_t z = 0; z < g.edge_count(); ++z) g.add_label(z, f.value(z));
  return g;
}

// Sum over edges of min(#zero labels, #one labels); zero iff consistent.
inline std::uint64_t inconsistency_score(const DeBruijnGraph& g) {
  std::uint64_t total = 0;
  for (std::uint32_t z = 0; z < g.edge_count(); ++z)
    total += std::min(g.zeros(z), g.ones(z));
  return total;
}

// Sweep a width-d window with periodic boundary over every input c of an
// explicit map F on {0,1}^n, appending output bit F(c)_i to the edge the
// window at cell i spells. F is a table indexed by configuration words
// (cell i = bit i).
inline DeBruijnGraph label_from_permutation(const std::vector<std::uint64_t>& map, int n, int d,
                                            int omega) {
  if (n < d) throw std::invalid_argument("label_from_permutation: n < d");
  if (n > 24) throw std::invalid_argument("label_from_permutation: n limited to 24");
  if (map.size() != (std::size_t{1} << n))
    throw std::invalid_argument("label_from_permutation: map has wrong size");
  DeBruijnGraph g(d);
  std::uint32_t win_mask = (1u << d) - 1u;
  for (std::uint64_t c = 0; c < (1ull << n); ++c) {
    auto cell = [&](int i) -> std::uint32_t {
      int j = i % n;
      if (j < 0) j += n;
      return static_cast<std::uint32_t>((c >> j) & 1u);
    };
    std::uint32_t idx = 0;
    for (int k = 0; k < d; ++k) idx = (idx << 1) | cell(-omega + k);
    for (int i = 0; i < n; ++i) {
      g.add_label(idx, (map[c] >> i) & 1u);
      idx = ((idx << 1) | cell(i + 1 - omega + d - 1)) & win_mask;
    }
  }
  return g;
}

namespace detail {

// Iterative Tarjan specialized to the label-matched product of a de Bruijn
// graph with itself: vertex (u, v) packed as u * 2^(d-1) + v, successors
// (u', v') where both edges exist (always, by overlap) and carry the same
// rule label.
class ProductScc {
 public:
  explicit ProductScc(const LocalRule& f)
      : d_(f.diameter()), half_(1u << (d_ - 1)), table_(f.table()) {}

  // True iff some product vertex off the diagonal lies on a cycle.
  bool has_offdiagonal_cycle() {
    std::uint64_t n = static_cast<std::uint64_t>(half_) * half_;
    index_.assign(n, 0);
    low_.assign(n, 0);
    on_stack_.assign(n, 0);
    counter_ = 0;
    for (std::uint64_t v = 0; v < n; ++v)
      if (index_[v] == 0 && strongconnect(v)) return true;
    return false;
  }

 private:
  struct Frame {
    std::uint64_t v;
    int edge;  // next successor choice 0..3
  };

  std::array<std::uint64_t, 4> successors(std::uint64_t v, int* count) const {
    std::uint32_t u = static_cast<std::uint32_t>(v / half_);
    std::uint32_t w = static_cast<std::uint32_t>(v % half_);
    std::array<std::uint64_t, 4> out{};
    int c = 0;
    for (int b1 = 0; b1 < 2; ++b1) {
      std::uint32_t zu = (u << 1) | static_cast<std::uint32_t>(b1);
      bool lu = table_.get(zu);
      for (int b2 = 0; b2 < 2; ++b2) {
        std::uint32_t zw = (w << 1) | static_cast<std::uint32_t>(b2);
        if (table_.get(zw) != lu) continue;
        std::uint64_t nu = zu & (half_ - 1u);
        std::uint64_t nw = zw & (half_ - 1u);
        out[c++] = nu * half_ + nw;
      }
    }
    *count = c;
    return out;
  }

  bool is_diagonal(std::uint64_t v) const { return v / half_ == v % half_; }

  // Returns true as soon as an off-diagonal vertex is found on a cycle:
  // either inside an SCC of size >= 2, or with a matching self-loop.
  bool strongconnect(std::uint64_t root) {
    stack_.clear();
    frames_.clear();
    frames_.push_back({root, 0});
    index_[root] = low_[root] = ++counter_;
    stack_.push_back(root);
    on_stack_[root] = 1;
    while (!frames_.empty()) {
      Frame& fr = frames_.back();
      int count = 0;
      auto succ = successors(fr.v, &count);
      if (fr.edge < count) {
        std::uint64_t w = succ[fr.edge++];
        if (w == fr.v) {
          if (!is_diagonal(fr.v)) return true;  // self-loop off the diagonal
          continue;
        }
        if (index_[w] == 0) {
          index_[w] = low_[w] = ++counter_;
          stack_.push_back(w);
          on_stack_[w] = 1;
          frames_.push_back({w, 0});
        } else if (on_stack_[w]) {
          low_[fr.v] = std::min(low_[fr.v], index_[w]);
        }
      } else {
        if (low_[fr.v] == index_[fr.v]) {
          // pop the SCC rooted here, fr.v included
          std::size_t start = stack_.size();
          while (stack_[start - 1] != fr.v) --start;
          --start;
          std::size_t size = stack_.size() - start;
          if (size >= 2) {
            for (std::size_t k = start; k < stack_.size(); ++k)
              if (!is_diagonal(stack_[k])) return true;
          }
          for (std::size_t k = start; k < stack_.size(); ++k) on_stack_[stack_[k]] = 0;
          stack_.resize(start);
        }
        std::uint64_t done = fr.v;
        frames_.pop_back();
        if (!frames_.empty()) low_[frames_.back().v] = std::min(low_[frames_.back().v], low_[done]);
      }
    }
    return false;
  }

  int d_;
  std::uint32_t half_;
  const BitTable& table_;
  std::vector<std::uint32_t> index_, low_;
  std::vector<std::uint8_t> on_stack_;
  std::vector<std::uint64_t> stack_;
  std::vector<Frame> frames_;
  std::uint32_t counter_ = 0;
};

}  // namespace detail

// Reversibility for every array length: true iff every product vertex on a
// cycle is diagonal. Guarded at d <= 12 (the product graph has 2^(2(d-1))
// vertices).
inline bool sutner_reversible(const LocalRule& f) {
  if (f.diameter() > 12)
    throw std::invalid_argument("sutner_reversible: guarded at d <= 12 (product graph size)");
  detail::ProductScc scc(f);
  return !scc.has_offdiagonal_cycle();
}

// Plain text edge list `u v label`, one line per recorded label.
inline void write_edge_list(const DeBruijnGraph& g, std::ostream& os) {
  auto vstr = [&](std::uint32_t v) {
    std::string s(static_cast<std::size_t>(g.order() - 1), '0');
    for (int i = 0; i < g.order() - 1; ++i)
      if ((v >> (g.order() - 2 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
  };
  for (std::uint32_t z = 0; z < g.edge_count(); ++z) {
    for (std::uint64_t k = 0; k < g.zeros(z); ++k)
      os << vstr(g.edge_from(z)) << ' ' << vstr(g.edge_to(z)) << " 0\n";
    for (std::uint64_t k = 0; k < g.ones(z); ++k)
      os << vstr(g.edge_from(z)) << ' ' << vstr(g.edge_to(z)) << " 1\n";
  }
}

}  // namespace revca
