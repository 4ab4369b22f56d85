// Exhaustive enumeration of generating functions for small diameters.
//
// The whole truth table of a candidate fits one machine word (m = d-1 <= 5),
// so the support IS the word and the compatibility test against the support
// becomes a single AND against a precomputed subcube mask: for each shift s
// the windows compatible with pattern w are exactly the table bits selected
// by MATCH[s][w]. A candidate is optimal when no shifted support pattern
// selects any support bit.
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <set>
#include <thread>
#include <vector>

#include "revca/boolfun.hpp"
#include "revca/fitness.hpp"

namespace revca {

struct ExhaustiveReport {
  int d = 0;
  int omega = 0;
  std::uint64_t raw_optimal_count = 0;  // every g with obj1 = 0, identity included
  std::uint64_t reduced_count = 0;      // complement pairs counted once, identity excluded
  std::set<int> weights;                // weights of the canonical representatives
  std::vector<GeneratingFunction> representatives;
  double seconds = 0.0;
};

// The lexicographically smaller table of {g, complement_input(g)}.
inline GeneratingFunction canonical_representative(const GeneratingFunction& g) {
  GeneratingFunction c = complement_input(g);
  return c.table() < g.table() ? c : g;
}

namespace detail {

// Compatibility machinery compressed to table-index space (m-bit words).
struct WordObj1 {
  int m;
  std::vector<std::uint32_t> masks;                 // per shift, in neighbor-index space
  std::vector<std::vector<std::uint64_t>> match;    // per shift: masked pattern -> support subcube
  std::uint32_t low_mask;                           // expand/compress split at the star
  int d, omega;

  WordObj1(int d_, int omega_) : m(d_ - 1), d(d_), omega(omega_) {
    low_mask = (1u << (d - 1 - omega)) - 1u;
    FitnessEvaluator proto(d, omega);  // validates ranges
    (void)proto;
    for (int s = -omega; s <= d - 1 - omega; ++s) {
      if (s == 0) continue;
      std::uint32_t mask = 0;
      for (int q = 0; q < d; ++q) {
        if (q == omega) continue;
        int src = q + s;
        if (src < 0 || src >= d || src == omega) continue;
        mask |= 1u << (d - 1 - q);
      }
      std::uint32_t nmask = compress(mask);
      std::vector<std::uint64_t> table(std::size_t{1} << m, 0);
      for (std::uint32_t u = 0; u < (1u << m); ++u) table[u & nmask] |= 1ull << u;
      shifts.push_back(s);
      masks.push_back(mask);
      match.push_back(std::move(table));
    }
  }

  std::uint32_t expand(std::uint32_t u) const { return ((u & ~low_mask) << 1) | (u & low_mask); }
  std::uint32_t compress(std::uint32_t v) const { return ((v >> 1) & ~low_mask) | (v & low_mask); }

  bool is_optimal(std::uint64_t table) const {
    std::uint64_t rest = table;
    while (rest) {
      std::uint32_t u = static_cast<std::uint32_t>(std::countr_zero(rest));
      rest &= rest - 1;
      std::uint32_t v = expand(u);
      for (std::size_t si = 0; si < shifts.size(); ++si) {
        int s = shifts[si];
        std::uint32_t w = (s > 0 ? v << s : v >> -s) & masks[si];
        if (table & match[si][compress(w)]) return false;
      }
    }
    return true;
  }

  std::vector<int> shifts;
};

}  // namespace detail

// Enumerates every generating function of d-1 variables, counts the ones
// with obj1 = 0, and reduces by input complement. Deterministic regardless
// of thread count. d = 6 sweeps 2^32 candidates and must be enabled
// explicitly.
inline ExhaustiveReport exhaustive_search(int d, int omega, bool allow_long = false,
                                          unsigned threads = 0) {
  if (d < 4 || d > 6) throw std::invalid_argument("exhaustive_search: supported range is 4 <= d <= 6");
  if (omega < 0 || omega >= d) throw std::invalid_argument("exhaustive_search: omega out of range");
  if (d == 6 && !allow_long)
    throw std::invalid_argument("exhaustive_search: long run requires --allow-long");

  auto t0 = std::chrono::steady_clock::now();
  int m = d - 1;
  std::uint64_t total = (m == 5) ? (std::uint64_t{1} << 32) : (std::uint64_t{1} << (1 << m));
  detail::WordObj1 zero_test(d, omega);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t block = 1ull << 16;
  std::atomic<std::uint64_t> next_block{0};
  std::uint64_t nblocks = (total + block - 1) / block;

  std::vector<std::uint64_t> raw_per_thread(threads, 0);
  std::vector<std::vector<std::uint64_t>> optima_per_thread(threads);
  auto worker = [&](unsigned tid) {
    std::uint64_t raw = 0;
    auto& optima = optima_per_thread[tid];
    for (;;) {
      std::uint64_t b = next_block.fetch_add(1);
      if (b >= nblocks) break;
      std::uint64_t lo = b * block, hi = std::min(total, lo + block);
      for (std::uint64_t g = lo; g < hi; ++g) {
        if (zero_test.is_optimal(g)) {
          ++raw;
          if (g != 0) optima.push_back(g);
        }
      }
    }
    raw_per_thread[tid] = raw;
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& t : pool) t.join();

  ExhaustiveReport rep;
  rep.d = d;
  rep.omega = omega;
  for (std::uint64_t r : raw_per_thread) rep.raw_optimal_count += r;

  std::vector<std::uint64_t> optima;
  for (auto& v : optima_per_thread) optima.insert(optima.end(), v.begin(), v.end());
  std::sort(optima.begin(), optima.end());

  std::set<BitTable> canon;
  std::size_t table_len = std::size_t{1} << m;
  for (std::uint64_t g : optima) {
    GeneratingFunction gf(m, BitTable::from_word(g, table_len));
    canon.insert(canonical_representative(gf).table());
  }
  for (const BitTable& t : canon) {
    GeneratingFunction gf(m, t);
    rep.weights.insert(hamming_weight(gf));
    rep.representatives.push_back(std::move(gf));
  }
  rep.reduced_count = canon.size();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// CSV row: d,omega,reduced_count,weights,raw_count,seconds. Weight sets are
// ';'-joined so the row stays unquoted.
inline void write_report_csv(std::ostream& os, const ExhaustiveReport& r, bool header = true) {
  if (header) os << "d,omega,reduced_count,weights,raw_count,seconds\n";
  os << r.d << ',' << r.omega << ',' << r.reduced_count << ',';
  bool first = true;
  for (int w : r.weights) {
    if (!first) os << ';';
    os << w;
    first = false;
  }
  if (r.weights.empty()) os << '-';
  os << ',' << r.raw_optimal_count << ',' << r.seconds << '\n';
}

}  // namespace revca
