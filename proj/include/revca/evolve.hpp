// The four steady-state engines (single-objective and lexicographic GA and
// GP) plus the shared tournament step. NSGA-II lives in nsga2.hpp.
//
// Every run is single-threaded and fully determined by its EngineConfig,
// including the seed: one generator drives initialization, selection and
// variation, so identical configs reproduce identical traces.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "revca/boolfun.hpp"
#include "revca/fitness.hpp"
#include "revca/rng.hpp"
#include "revca/tree.hpp"

namespace revca {

enum class Algorithm { SOGA, SOGP, LEXGA, LEXGP, NSGA2 };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::SOGA: return "SOGA";
    case Algorithm::SOGP: return "SOGP";
    case Algorithm::LEXGA: return "LEXGA";
    case Algorithm::LEXGP: return "LEXGP";
    case Algorithm::NSGA2: return "NSGA2";
  }
  return "?";
}

inline Algorithm algorithm_from_name(const std::string& s) {
  if (s == "SOGA") return Algorithm::SOGA;
  if (s == "SOGP") return Algorithm::SOGP;
  if (s == "LEXGA") return Algorithm::LEXGA;
  if (s == "LEXGP") return Algorithm::LEXGP;
  if (s == "NSGA2") return Algorithm::NSGA2;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

struct EngineConfig {
  Algorithm algorithm = Algorithm::SOGA;
  int d = 8;
  int omega = 3;
  int population_size = 0;  // 0 = per-algorithm default
  double mutation_rate = 0.9;                             // GA: per-child single bit flip
  int max_depth = -1;                                     // GP: -1 means d-1
  std::vector<Op> operator_set = {Op::And, Op::Or, Op::Not, Op::AndC};
  std::uint64_t evaluation_budget = 500000;
  std::uint64_t seed = 1;

  int effective_max_depth() const { return max_depth < 0 ? d - 1 : max_depth; }

  // Steady-state engines default to 500. NSGA-II runs generational and
  // needs its generations more than its breadth: at 500 the reversible end
  // of the front starves inside the 500k budget, at 50 it is reached
  // reliably.
  int effective_population() const {
    if (population_size > 0) return population_size;
    return algorithm == Algorithm::NSGA2 ? 50 : 500;
  }

  bool is_gp() const { return algorithm == Algorithm::SOGP || algorithm == Algorithm::LEXGP; }
  bool is_single_objective() const {
    return algorithm == Algorithm::SOGA || algorithm == Algorithm::SOGP;
  }

  void validate() const {
    if (d < 3 || d > 20) throw std::invalid_argument("config: d out of range");
    if (omega <= 0 || omega >= d - 1)
      throw std::invalid_argument("config: search requires an interior offset (0 < omega < d-1)");
    if (effective_population() < 3) throw std::invalid_argument("config: population must be >= 3");
    if (evaluation_budget < static_cast<std::uint64_t>(effective_population()))
      throw std::invalid_argument("config: budget smaller than the initial population");
    if (mutation_rate < 0.0 || mutation_rate > 1.0)
      throw std::invalid_argument("config: mutation rate outside [0,1]");
    if (is_gp()) {
      if (effective_max_depth() < 1) throw std::invalid_argument("config: max depth < 1");
      if (operator_set.empty()) throw std::invalid_argument("config: empty operator set");
      for (Op op : operator_set)
        if (op == Op::Var) throw std::invalid_argument("config: Var is not an operator");
    }
  }
};

struct BitstringGenome {
  GeneratingFunction g;
  FitnessRecord record;
};

struct TreeGenome {
  Tree tree;
  GeneratingFunction g;  // decoded phenotype
  FitnessRecord record;
};

struct LogPoint {
  std::uint64_t evaluations;
  std::int64_t best_fit;
  std::int64_t best_obj1;
  int best_obj2;
};

struct ArchivedSolution {
  GeneratingFunction g;
  FitnessRecord record;
  std::uint64_t found_at_evaluation;
};

struct FrontPoint {
  std::int64_t obj1;
  int obj2;
  GeneratingFunction g;
};

struct RunResult {
  EngineConfig config;
  std::uint64_t evaluations = 0;
  std::optional<std::uint64_t> evaluations_to_optimum;
  std::optional<GeneratingFunction> best;
  FitnessRecord best_record;
  std::vector<LogPoint> log;
  std::vector<ArchivedSolution> archive;  // lexicographic engines
  std::vector<FrontPoint> front;          // NSGA-II
};

// A proper solution: conserved landscape rule with at least one flip
// pattern. The identity (empty support) scores obj1 = 0 too but is not
// counted as a find.
inline bool is_solution(const FitnessRecord& r) { return r.obj1 == 0 && r.obj2 >= 1; }

// --- GA variation -----------------------------------------------------------

// One of {one-point, two-point, uniform} crossover chosen uniformly, then
// with probability mutation_rate exactly one uniformly chosen bit flip.
inline GeneratingFunction ga_variation(const GeneratingFunction& p1, const GeneratingFunction& p2,
                                       double mutation_rate, Rng& rng) {
  if (p1.num_vars() != p2.num_vars()) throw std::invalid_argument("ga_variation: length mismatch");
  std::size_t len = p1.table().size();
  BitTable child(len);
  switch (rng.below(3)) {
    case 0: {  // one-point
      std::size_t cut = 1 + rng.index(len - 1);
      for (std::size_t i = 0; i < len; ++i)
        if ((i < cut ? p1 : p2).table().get(i)) child.set(i, true);
      break;
    }
    case 1: {  // two-point
      std::size_t a = 1 + rng.index(len - 1);
      std::size_t b = 1 + rng.index(len - 1);
      if (a > b) std::swap(a, b);
      for (std::size_t i = 0; i < len; ++i)
        if ((i >= a && i < b ? p2 : p1).table().get(i)) child.set(i, true);
      break;
    }
    default: {  // uniform
      for (std::size_t w = 0; w < child.word_count(); ++w) {
        std::uint64_t m = rng.next();
        child.mutable_word(w) = (p1.table().word(w) & m) | (p2.table().word(w) & ~m);
      }
      BitTable norm(len);
      norm |= child;
      child = std::move(norm);
      break;
    }
  }
  if (rng.chance(mutation_rate)) child.flip(rng.index(len));
  return GeneratingFunction(p1.num_vars(), std::move(child));
}

// --- GP variation -----------------------------------------------------------

struct GpVariation {
  std::vector<Op> ops;
  int num_vars;
  int max_depth;

  Tree operator()(const Tree& p1, const Tree& p2, Rng& rng) const {
    for (int attempt = 0; attempt < 5; ++attempt) {
      Tree child = cross(p1, p2, rng);
      if (rng.chance(0.5)) child = mutate_subtree(child, ops, num_vars, max_depth, rng);
      if (child.depth() <= max_depth) return child;
    }
    Tree child = cross(p1, p2, rng);
    if (rng.chance(0.5)) child = mutate_subtree(child, ops, num_vars, max_depth, rng);
    return truncate_to_depth(child, num_vars, max_depth, rng);
  }

 private:
  Tree cross(const Tree& p1, const Tree& p2, Rng& rng) const {
    switch (rng.below(5)) {
      case 0: return crossover_subtree(p1, p2, rng);
      case 1: return crossover_uniform(p1, p2, rng);
      case 2: return crossover_size_fair(p1, p2, rng);
      case 3: return crossover_one_point(p1, p2, rng);
      default: return crossover_context_preserving(p1, p2, rng);
    }
  }
};

// --- steady-state tournament --------------------------------------------------

// Three distinct individuals at random; the best two are crossed, the child
// (after mutation inside `vary`) replaces the tournament's worst. Exactly
// one evaluation. Ties rank randomly. Returns the replaced index.
template <class Individual, class VaryFn, class EvalFn, class LessFn>
std::size_t steady_state_step(std::vector<Individual>& pop, VaryFn&& vary, EvalFn&& evaluate,
                              LessFn&& less, Rng& rng) {
  if (pop.size() < 3) throw std::invalid_argument("steady_state_step: population < 3");
  std::size_t idx[3];
  idx[0] = rng.index(pop.size());
  do {
    idx[1] = rng.index(pop.size());
  } while (idx[1] == idx[0]);
  do {
    idx[2] = rng.index(pop.size());
  } while (idx[2] == idx[0] || idx[2] == idx[1]);
  std::uint64_t key[3] = {rng.next(), rng.next(), rng.next()};
  int order[3] = {0, 1, 2};
  std::sort(order, order + 3, [&](int a, int b) {
    if (less(pop[idx[a]], pop[idx[b]])) return true;
    if (less(pop[idx[b]], pop[idx[a]])) return false;
    return key[a] < key[b];
  });
  Individual child = vary(pop[idx[order[0]]], pop[idx[order[1]]], rng);
  evaluate(child);
  std::size_t replaced = idx[order[2]];
  pop[replaced] = std::move(child);
  return replaced;
}

// --- engines ------------------------------------------------------------------

namespace detail {

template <class Individual>
struct RunState {
  RunResult result;
  std::int64_t best_key = 0;
  bool have_best = false;
  int best_archived_weight = 0;

  std::int64_t fitness_of(const FitnessRecord& r, bool lexicographic) const {
    return lexicographic ? r.fit2 : r.fit1;
  }

  // Track best-so-far, the improvement log, the solution archive and the
  // stop condition; called once per evaluation in evaluation order.
  void observe(const EngineConfig& cfg, const GeneratingFunction& g, const FitnessRecord& rec,
               bool lexicographic) {
    ++result.evaluations;
    std::int64_t fit = fitness_of(rec, lexicographic);
    if (!have_best || fit < best_key) {
      have_best = true;
      best_key = fit;
      result.best = g;
      result.best_record = rec;
      result.log.push_back({result.evaluations, fit, rec.obj1, rec.obj2});
    }
    if (is_solution(rec)) {
      if (!result.evaluations_to_optimum) {
        result.evaluations_to_optimum = result.evaluations;
        if (!lexicographic) {
          // single-objective engines stop here; the run reports this find,
          // not an earlier zero-fit individual such as the identity
          result.best = g;
          result.best_record = rec;
        }
      }
      if (lexicographic && rec.obj2 > best_archived_weight) {
        best_archived_weight = rec.obj2;
        result.archive.push_back({g, rec, result.evaluations});
      }
    }
  }
};

}  // namespace detail

// Shared steady-state driver; Ops supplies genome construction, variation
// and decoding for the two representations.
template <class Ops>
RunResult run_steady_state(const EngineConfig& cfg, Ops ops) {
  cfg.validate();
  bool lexicographic = !cfg.is_single_objective();
  Rng rng(cfg.seed);
  FitnessEvaluator fe(cfg.d, cfg.omega);
  detail::RunState<typename Ops::Individual> state;
  state.result.config = cfg;

  std::vector<typename Ops::Individual> pop;
  pop.reserve(static_cast<std::size_t>(cfg.effective_population()));
  for (int i = 0; i < cfg.effective_population(); ++i) {
    auto ind = ops.fresh(static_cast<std::size_t>(i), rng);
    ind.record = fe.evaluate(ind.g);
    state.observe(cfg, ind.g, ind.record, lexicographic);
    pop.push_back(std::move(ind));
    if (!lexicographic && state.result.evaluations_to_optimum) return state.result;
  }

  auto less = [&](const typename Ops::Individual& a, const typename Ops::Individual& b) {
    return state.fitness_of(a.record, lexicographic) < state.fitness_of(b.record, lexicographic);
  };
  auto evaluate = [&](typename Ops::Individual& ind) {
    ind.record = fe.evaluate(ind.g);
    state.observe(cfg, ind.g, ind.record, lexicographic);
  };
  auto vary = [&](const typename Ops::Individual& a, const typename Ops::Individual& b, Rng& r) {
    return ops.vary(a, b, r);
  };

  while (state.result.evaluations < cfg.evaluation_budget) {
    steady_state_step(pop, vary, evaluate, less, rng);
    if (!lexicographic && state.result.evaluations_to_optimum) break;
  }
  return state.result;
}

struct GaOps {
  using Individual = BitstringGenome;
  int num_vars;
  double mutation_rate;

  Individual fresh(std::size_t, Rng& rng) const {
    return {GeneratingFunction::random(num_vars, rng), {}};
  }
  Individual vary(const Individual& a, const Individual& b, Rng& rng) const {
    return {ga_variation(a.g, b.g, mutation_rate, rng), {}};
  }
  GeneratingFunction decode(const Individual& ind) const { return ind.g; }
};

struct GpOps {
  using Individual = TreeGenome;
  GpVariation variation;

  Individual fresh(std::size_t ordinal, Rng& rng) const {
    Tree t = ramped_tree(variation.ops, variation.num_vars, variation.max_depth, ordinal, rng);
    GeneratingFunction g(variation.num_vars, t.evaluate(variation.num_vars));
    return {std::move(t), std::move(g), {}};
  }
  Individual vary(const Individual& a, const Individual& b, Rng& rng) const {
    Tree t = variation(a.tree, b.tree, rng);
    GeneratingFunction g(variation.num_vars, t.evaluate(variation.num_vars));
    return {std::move(t), std::move(g), {}};
  }
  GeneratingFunction decode(const Individual& ind) const {
    return GeneratingFunction(variation.num_vars, ind.tree.evaluate(variation.num_vars));
  }
};

// Minimizes fit1; stops at the first conserved landscape solution.
inline RunResult run_single_objective(const EngineConfig& cfg) {
  if (!cfg.is_single_objective())
    throw std::invalid_argument("run_single_objective: algorithm must be SOGA or SOGP");
  if (cfg.algorithm == Algorithm::SOGA)
    return run_steady_state(cfg, GaOps{cfg.d - 1, cfg.mutation_rate});
  return run_steady_state(cfg, GpOps{{cfg.operator_set, cfg.d - 1, cfg.effective_max_depth()}});
}

// Minimizes fit2 for the whole budget, archiving every solution that
// raises the best Hamming weight seen so far.
inline RunResult run_lexicographic(const EngineConfig& cfg) {
  if (cfg.algorithm != Algorithm::LEXGA && cfg.algorithm != Algorithm::LEXGP)
    throw std::invalid_argument("run_lexicographic: algorithm must be LEXGA or LEXGP");
  if (cfg.algorithm == Algorithm::LEXGA)
    return run_steady_state(cfg, GaOps{cfg.d - 1, cfg.mutation_rate});
  return run_steady_state(cfg, GpOps{{cfg.operator_set, cfg.d - 1, cfg.effective_max_depth()}});
}

}  // namespace revca
