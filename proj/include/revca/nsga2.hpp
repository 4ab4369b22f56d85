// Generational NSGA-II over bitstring genomes, minimizing the compatibility
// count and maximizing the Hamming weight: fast non-dominated sort, crowding
// distance, binary tournament on the crowded comparison, (mu + lambda)
// environmental selection.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "revca/evolve.hpp"
#include "revca/fitness.hpp"

namespace revca {

namespace detail {

struct MoIndividual {
  GeneratingFunction g;
  std::int64_t f1;  // obj1, minimized
  std::int64_t f2;  // -obj2, minimized
  int obj2;
  int rank = 0;
  double crowding = 0.0;
};

inline bool dominates(const MoIndividual& a, const MoIndividual& b) {
  return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

inline std::vector<std::vector<std::size_t>> fast_non_dominated_sort(
    std::vector<MoIndividual>& pop) {
  std::size_t n = pop.size();
  std::vector<int> dominated_count(n, 0);
  std::vector<std::vector<std::size_t>> dominates_list(n);
  std::vector<std::vector<std::size_t>> fronts(1);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(pop[p], pop[q]))
        dominates_list[p].push_back(q);
      else if (dominates(pop[q], pop[p]))
        ++dominated_count[p];
    }
    if (dominated_count[p] == 0) {
      pop[p].rank = 0;
      fronts[0].push_back(p);
    }
  }
  std::size_t i = 0;
  while (!fronts[i].empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : fronts[i]) {
      for (std::size_t q : dominates_list[p]) {
        if (--dominated_count[q] == 0) {
          pop[q].rank = static_cast<int>(i) + 1;
          next.push_back(q);
        }
      }
    }
    ++i;
    fronts.push_back(std::move(next));
  }
  fronts.pop_back();
  return fronts;
}

inline void assign_crowding(std::vector<MoIndividual>& pop, std::vector<std::size_t>& front) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i : front) pop[i].crowding = 0.0;
  if (front.size() <= 2) {
    for (std::size_t i : front) pop[i].crowding = inf;
    return;
  }
  for (int obj = 0; obj < 2; ++obj) {
    auto key = [&](std::size_t i) { return obj == 0 ? pop[i].f1 : pop[i].f2; };
    std::sort(front.begin(), front.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    double span = static_cast<double>(key(front.back()) - key(front.front()));
    pop[front.front()].crowding = inf;
    pop[front.back()].crowding = inf;
    if (span <= 0.0) continue;
    for (std::size_t k = 1; k + 1 < front.size(); ++k)
      pop[front[k]].crowding += static_cast<double>(key(front[k + 1]) - key(front[k - 1])) / span;
  }
}

// rank ascending, then crowding descending, ties random.
inline bool crowded_less(const MoIndividual& a, const MoIndividual& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.crowding > b.crowding;
}

}  // namespace detail

inline RunResult run_nsga2(const EngineConfig& cfg) {
  if (cfg.algorithm != Algorithm::NSGA2)
    throw std::invalid_argument("run_nsga2: algorithm must be NSGA2");
  cfg.validate();
  Rng rng(cfg.seed);
  FitnessEvaluator fe(cfg.d, cfg.omega);
  RunResult result;
  result.config = cfg;

  auto log_population_best = [&](std::vector<detail::MoIndividual>& pop) {
    // best individual for logging: lexicographically smallest (obj1, -obj2)
    const detail::MoIndividual* best = &pop[0];
    for (const auto& ind : pop)
      if (ind.f1 < best->f1 || (ind.f1 == best->f1 && ind.f2 < best->f2)) best = &ind;
    FitnessRecord rec = FitnessRecord::from_objectives(best->f1, best->obj2);
    if (result.log.empty() || result.log.back().best_obj1 > rec.obj1 ||
        (result.log.back().best_obj1 == rec.obj1 && result.log.back().best_obj2 < rec.obj2)) {
      result.log.push_back({result.evaluations, rec.fit1, rec.obj1, rec.obj2});
      result.best = best->g;
      result.best_record = rec;
    }
  };

  auto make = [&](GeneratingFunction g) {
    FitnessRecord r = fe.evaluate(g);
    ++result.evaluations;
    if (is_solution(r) && !result.evaluations_to_optimum)
      result.evaluations_to_optimum = result.evaluations;
    return detail::MoIndividual{std::move(g), r.obj1, -static_cast<std::int64_t>(r.obj2), r.obj2};
  };

  std::size_t pop_size = static_cast<std::size_t>(cfg.effective_population());
  std::vector<detail::MoIndividual> pop;
  pop.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i)
    pop.push_back(make(GeneratingFunction::random(cfg.d - 1, rng)));
  {
    auto fronts = detail::fast_non_dominated_sort(pop);
    for (auto& f : fronts) detail::assign_crowding(pop, f);
  }
  log_population_best(pop);

  auto tournament = [&]() -> const detail::MoIndividual& {
    const detail::MoIndividual& a = pop[rng.index(pop.size())];
    const detail::MoIndividual& b = pop[rng.index(pop.size())];
    if (detail::crowded_less(a, b)) return a;
    if (detail::crowded_less(b, a)) return b;
    return rng.coin() ? a : b;
  };

  while (result.evaluations + pop_size <= cfg.evaluation_budget) {
    std::vector<detail::MoIndividual> merged = pop;
    merged.reserve(2 * pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
      const auto& p1 = tournament();
      const auto& p2 = tournament();
      merged.push_back(make(ga_variation(p1.g, p2.g, cfg.mutation_rate, rng)));
    }
    auto fronts = detail::fast_non_dominated_sort(merged);
    std::vector<detail::MoIndividual> next;
    next.reserve(pop_size);
    for (auto& front : fronts) {
      detail::assign_crowding(merged, front);
      if (next.size() + front.size() <= pop_size) {
        for (std::size_t i : front) next.push_back(merged[i]);
      } else {
        std::sort(front.begin(), front.end(), [&](std::size_t a, std::size_t b) {
          return merged[a].crowding > merged[b].crowding;
        });
        for (std::size_t i : front) {
          if (next.size() == pop_size) break;
          next.push_back(merged[i]);
        }
        break;
      }
      if (next.size() == pop_size) break;
    }
    pop = std::move(next);
    log_population_best(pop);
  }

  // final non-dominated set, genome duplicates removed
  auto fronts = detail::fast_non_dominated_sort(pop);
  std::vector<FrontPoint> front;
  for (std::size_t i : fronts[0]) front.push_back({pop[i].f1, pop[i].obj2, pop[i].g});
  std::sort(front.begin(), front.end(), [](const FrontPoint& a, const FrontPoint& b) {
    if (a.obj1 != b.obj1) return a.obj1 < b.obj1;
    if (a.obj2 != b.obj2) return a.obj2 < b.obj2;
    return a.g.table() < b.g.table();
  });
  front.erase(std::unique(front.begin(), front.end(),
                          [](const FrontPoint& a, const FrontPoint& b) {
                            return a.obj1 == b.obj1 && a.obj2 == b.obj2 && a.g == b.g;
                          }),
              front.end());
  result.front = std::move(front);
  if (!result.front.empty()) {
    const FrontPoint& fp = result.front.front();
    result.best = fp.g;
    result.best_record = FitnessRecord::from_objectives(fp.obj1, fp.obj2);
  }
  return result;
}

// Dispatcher over the five engines.
inline RunResult run_engine(const EngineConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::SOGA:
    case Algorithm::SOGP: return run_single_objective(cfg);
    case Algorithm::LEXGA:
    case Algorithm::LEXGP: return run_lexicographic(cfg);
    case Algorithm::NSGA2: return run_nsga2(cfg);
  }
  throw std::logic_error("unreachable");
}

}  // namespace revca
