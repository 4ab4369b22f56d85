// Objective and fitness functions over generating functions.
//
// obj1 counts ordered (i, j, t) triples: atomic landscape L_i, neighborhood
// position j, atomic landscape L_t such that the tabulated landscape M_{i,j}
// is compatible with L_t. Because every L_t is atomic (full care set), the
// compatibility test reduces to "the fixed symbols of M_{i,j} all agree with
// L_t", which is one mask-and-compare on packed patterns. Counting matches
// the double-sum definition literally: no deduplication.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "revca/boolfun.hpp"

namespace revca {

struct FitnessRecord {
  std::int64_t obj1 = 0;
  int obj2 = 0;
  std::int64_t fit1 = 0;  // = obj1, minimized
  std::int64_t fit2 = 0;  // = obj1 if obj1 > 0, else -obj2

  static FitnessRecord from_objectives(std::int64_t o1, int o2) {
    FitnessRecord r;
    r.obj1 = o1;
    r.obj2 = o2;
    r.fit1 = o1;
    r.fit2 = o1 > 0 ? o1 : -static_cast<std::int64_t>(o2);
    return r;
  }
};

// Reusable obj1 engine for one (d, omega). Holds the per-shift care masks
// and counting scratch, so a long run does not reallocate per evaluation.
// Not thread-safe across calls; use one instance per worker.
class FitnessEvaluator {
 public:
  FitnessEvaluator(int d, int omega) : d_(d), omega_(omega) {
    if (d < 2 || d > 20) throw std::invalid_argument("FitnessEvaluator: diameter out of range");
    if (omega < 0 || omega >= d) throw std::invalid_argument("FitnessEvaluator: omega out of range");
    // one shift per neighborhood position j != omega: s = j - omega
    for (int s = -omega; s <= d - 1 - omega; ++s) {
      if (s == 0) continue;
      std::uint32_t mask = 0;
      for (int q = 0; q < d; ++q) {
        if (q == omega) continue;
        int src = q + s;
        if (src < 0 || src >= d || src == omega) continue;
        mask |= 1u << (d - 1 - q);
      }
      shifts_.push_back(s);
      masks_.push_back(mask);
    }
    counts_.assign(std::size_t{1} << d, 0);
  }

  int diameter() const { return d_; }
  int offset() const { return omega_; }

  std::int64_t obj1(const GeneratingFunction& g) { return run<false>(g); }
  bool obj1_is_zero(const GeneratingFunction& g) { return run<true>(g) == 0; }

  FitnessRecord evaluate(const GeneratingFunction& g) {
    return FitnessRecord::from_objectives(obj1(g), hamming_weight(g));
  }

 private:
  template <bool EarlyExit>
  std::int64_t run(const GeneratingFunction& g) {
    if (g.num_vars() != d_ - 1)
      throw std::invalid_argument("FitnessEvaluator: generating function has wrong arity");
    expanded_.clear();
    g.table().for_each_set([&](std::size_t u) {
      expanded_.push_back(expand_support(static_cast<std::uint32_t>(u)));
    });
    std::int64_t total = 0;
    for (std::size_t si = 0; si < shifts_.size(); ++si) {
      int s = shifts_[si];
      std::uint32_t mask = masks_[si];
      touched_.clear();
      for (std::uint32_t v : expanded_) {
        std::uint32_t key = v & mask;
        if (counts_[key]++ == 0) touched_.push_back(key);
      }
      for (std::uint32_t v : expanded_) {
        std::uint32_t w = (s > 0 ? v << s : v >> -s) & mask;
        total += counts_[w];
        if (EarlyExit && total > 0) break;
      }
      for (std::uint32_t key : touched_) counts_[key] = 0;
      if (EarlyExit && total > 0) return total;
    }
    return total;
  }

  // Neighbor index -> width-d pattern bits with a zero gap at the star.
  std::uint32_t expand_support(std::uint32_t u) const {
    std::uint32_t low_mask = (1u << (d_ - 1 - omega_)) - 1u;
    return ((u & ~low_mask) << 1) | (u & low_mask);
  }

  int d_;
  int omega_;
  std::vector<int> shifts_;
  std::vector<std::uint32_t> masks_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint32_t> expanded_;
};

inline std::int64_t obj1(const GeneratingFunction& g, int omega) {
  FitnessEvaluator ev(g.num_vars() + 1, omega);
  return ev.obj1(g);
}

inline int obj2(const GeneratingFunction& g) { return hamming_weight(g); }

inline std::int64_t fit1(const GeneratingFunction& g, int omega) { return obj1(g, omega); }

inline std::int64_t fit2(const GeneratingFunction& g, int omega) {
  return FitnessRecord::from_objectives(obj1(g, omega), obj2(g)).fit2;
}

}  // namespace revca
