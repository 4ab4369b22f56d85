// Experiment harness: seeded run batches on a worker pool, CSV export of
// run logs and aggregates, diversity metrics, rule verification, and the
// plain-text configuration file format.
//
// All evolve outputs are reproducible byte for byte from the base seed:
// nothing time-dependent is written there.
#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "revca/ca.hpp"
#include "revca/debruijn.hpp"
#include "revca/evolve.hpp"
#include "revca/nsga2.hpp"

namespace revca {

struct ExperimentSpec {
  EngineConfig base;
  int runs = 50;
  std::uint64_t base_seed = 1;
  std::string output_dir;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct DiversityReport {
  int unique_weights = 0;  // UHW
  int min_weight = 0;      // mHW
  int max_weight = 0;      // MHW
  int unique_solutions = 0;        // USol over every archived solution
  int unique_best_solutions = 0;   // USol over best-of-run solutions only
};

// Solutions of an SO run: the terminal solution, if any. LEX runs: the
// whole archive.
inline std::vector<ArchivedSolution> run_solutions(const RunResult& r) {
  if (!r.archive.empty()) return r.archive;
  if (r.best && is_solution(r.best_record))
    return {{*r.best, r.best_record, r.evaluations_to_optimum.value_or(r.evaluations)}};
  return {};
}

inline DiversityReport diversity_metrics(const std::vector<std::vector<ArchivedSolution>>& archives) {
  std::set<int> weights;
  std::set<BitTable> tables;
  std::set<BitTable> best_tables;
  for (const auto& archive : archives) {
    int best_weight = -1;
    const ArchivedSolution* best = nullptr;
    for (const auto& sol : archive) {
      weights.insert(sol.record.obj2);
      tables.insert(sol.g.table());
      if (sol.record.obj2 > best_weight) {
        best_weight = sol.record.obj2;
        best = &sol;
      }
    }
    if (best) best_tables.insert(best->g.table());
  }
  if (tables.empty()) throw std::invalid_argument("diversity_metrics: no archived solutions");
  DiversityReport rep;
  rep.unique_weights = static_cast<int>(weights.size());
  rep.min_weight = *weights.begin();
  rep.max_weight = *weights.rbegin();
  rep.unique_solutions = static_cast<int>(tables.size());
  rep.unique_best_solutions = static_cast<int>(best_tables.size());
  return rep;
}

// --- CSV / file output -------------------------------------------------------

// Event log rows, down-sampled to at most `cap` improvement points (the
// first and last are always kept).
inline void write_run_log(std::ostream& os, const RunResult& r, std::size_t cap = 1000) {
  os << "evaluations,best_fit,best_obj1,best_obj2\n";
  const auto& log = r.log;
  std::size_t n = log.size();
  auto emit = [&](const LogPoint& p) {
    os << p.evaluations << ',' << p.best_fit << ',' << p.best_obj1 << ',' << p.best_obj2 << '\n';
  };
  if (n <= cap) {
    for (const auto& p : log) emit(p);
    return;
  }
  for (std::size_t k = 0; k < cap; ++k) emit(log[k * (n - 1) / (cap - 1)]);
}

inline void write_archive(std::ostream& os, const std::vector<ArchivedSolution>& archive, int omega) {
  for (const auto& sol : archive) os << rule_to_text(sol.g, omega) << '\n';
}

inline void write_front(std::ostream& os, const std::vector<FrontPoint>& front) {
  os << "obj1,obj2,genome_hex\n";
  for (const auto& p : front) os << p.obj1 << ',' << p.obj2 << ',' << p.g.table().hex() << '\n';
}

inline void write_diversity(std::ostream& os, const ExperimentSpec& spec, const DiversityReport& d) {
  os << "algorithm,d,omega,runs,UHW,mHW,MHW,USol,USolBest\n";
  os << algorithm_name(spec.base.algorithm) << ',' << spec.base.d << ',' << spec.base.omega << ','
     << spec.runs << ',' << d.unique_weights << ',' << d.min_weight << ',' << d.max_weight << ','
     << d.unique_solutions << ',' << d.unique_best_solutions << '\n';
}

// Median best-fitness across runs at evenly spaced evaluation checkpoints.
inline void write_median_convergence(std::ostream& os, const std::vector<RunResult>& runs,
                                     std::size_t points = 1000) {
  os << "evaluations,median_best_fit\n";
  if (runs.empty()) return;
  std::uint64_t budget = 0;
  for (const auto& r : runs) budget = std::max(budget, r.evaluations);
  points = std::min<std::size_t>(points, budget);
  std::vector<std::int64_t> sample;
  for (std::size_t k = 1; k <= points; ++k) {
    std::uint64_t at = budget * k / points;
    sample.clear();
    for (const auto& r : runs) {
      // best fitness recorded at or before `at`; runs that stopped early
      // hold their final value
      std::int64_t v = 0;
      bool seen = false;
      for (const auto& p : r.log) {
        if (p.evaluations <= at) {
          v = p.best_fit;
          seen = true;
        } else {
          break;
        }
      }
      if (seen) sample.push_back(v);
    }
    if (sample.empty()) continue;
    std::sort(sample.begin(), sample.end());
    std::int64_t median = sample[sample.size() / 2];
    os << at << ',' << median << '\n';
  }
}

// --- experiment execution ------------------------------------------------------

// Run r uses seed base_seed + r. Runs execute on a pool; results come back
// in run order regardless of scheduling.
inline std::vector<RunResult> run_experiment(const ExperimentSpec& spec) {
  spec.base.validate();
  if (spec.runs < 1) throw std::invalid_argument("experiment: runs < 1");
  std::vector<std::optional<RunResult>> slots(static_cast<std::size_t>(spec.runs));
  std::atomic<int> next{0};
  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.runs));
  auto worker = [&]() {
    for (;;) {
      int r = next.fetch_add(1);
      if (r >= spec.runs) break;
      EngineConfig cfg = spec.base;
      cfg.seed = spec.base_seed + static_cast<std::uint64_t>(r);
      slots[static_cast<std::size_t>(r)] = run_engine(cfg);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<RunResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// Re-verification before anything reaches an archive file: the solution
// must score obj1 = 0 and act as an involution at n = d + 1.
inline bool reverify_solution(const ArchivedSolution& sol, int d, int omega) {
  FitnessEvaluator fe(d, omega);
  if (fe.obj1(sol.g) != 0) return false;
  return is_involution_exhaustive(local_rule_from_generating(sol.g, omega), d + 1);
}

// Writes run_<r>.csv, per-run archive/front files, diversity.csv and
// convergence_median.csv under spec.output_dir. Returns the results.
inline std::vector<RunResult> run_experiment_to_files(const ExperimentSpec& spec) {
  namespace fs = std::filesystem;
  if (spec.output_dir.empty()) throw std::invalid_argument("experiment: output directory not set");
  fs::create_directories(spec.output_dir);
  auto runs = run_experiment(spec);
  std::vector<std::vector<ArchivedSolution>> archives;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    fs::path base = fs::path(spec.output_dir);
    {
      std::ofstream os(base / ("run_" + std::to_string(r) + ".csv"));
      write_run_log(os, runs[r]);
    }
    auto sols = run_solutions(runs[r]);
    for (const auto& sol : sols)
      if (!reverify_solution(sol, spec.base.d, spec.base.omega))
        throw std::runtime_error("archived solution failed re-verification");
    if (!sols.empty()) {
      std::ofstream os(base / ("run_" + std::to_string(r) + "_archive.rules"));
      write_archive(os, sols, spec.base.omega);
    }
    if (!runs[r].front.empty()) {
      std::ofstream os(base / ("run_" + std::to_string(r) + "_front.csv"));
      write_front(os, runs[r].front);
    }
    archives.push_back(std::move(sols));
  }
  bool any = false;
  for (const auto& a : archives) any = any || !a.empty();
  if (any && spec.base.algorithm != Algorithm::NSGA2) {
    std::ofstream os(fs::path(spec.output_dir) / "diversity.csv");
    write_diversity(os, spec, diversity_metrics(archives));
  }
  {
    std::ofstream os(fs::path(spec.output_dir) / "convergence_median.csv");
    write_median_convergence(os, runs);
  }
  return runs;
}

// --- verification --------------------------------------------------------------

struct CheckResult {
  std::string name;
  bool applicable = true;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (c.applicable && !c.passed) return false;
    return true;
  }
};

// obj1, involution, bijectivity and (d <= 12) the product-graph decision,
// over the requested range of array lengths.
inline VerificationReport verify_rule(const ParsedRule& pr, int n_min, int n_max,
                                      std::uint64_t samples = 10000, std::uint64_t seed = 1,
                                      int exhaustive_cap = 14) {
  VerificationReport rep;
  const LocalRule& f = pr.rule;
  int d = f.diameter();
  if (n_min < d) n_min = d;
  if (n_max < n_min) n_max = n_min;

  {
    CheckResult c{"marker-form", true, false, ""};
    c.passed = pr.g.has_value();
    if (!c.passed) c.detail = "rule is not the XOR of the origin with a neighbor function";
    rep.checks.push_back(c);
  }
  {
    CheckResult c{"obj1=0", true, false, ""};
    if (pr.g) {
      std::int64_t v = obj1(*pr.g, f.offset());
      c.passed = v == 0;
      c.detail = "obj1 = " + std::to_string(v);
    } else {
      c.detail = "no generating function";
    }
    rep.checks.push_back(c);
  }
  for (int n = n_min; n <= n_max; ++n) {
    CheckResult c{"involution n=" + std::to_string(n), true, false, ""};
    if (n <= exhaustive_cap) {
      c.passed = is_involution_exhaustive(f, n);
      c.detail = "exhaustive";
    } else if (n <= 64) {
      c.passed = is_involution_sampled(f, n, samples, seed);
      c.detail = std::to_string(samples) + " samples, seed " + std::to_string(seed);
    } else {
      c.applicable = false;
    }
    rep.checks.push_back(c);
  }
  for (int n = n_min; n <= n_max && n <= 24; ++n) {
    CheckResult c{"bijective n=" + std::to_string(n), true, false, ""};
    c.passed = is_bijective(f, n);
    rep.checks.push_back(c);
  }
  {
    CheckResult c{"product-graph reversible", d <= 12, false, ""};
    if (d <= 12)
      c.passed = sutner_reversible(f);
    else
      c.detail = "skipped: d > 12";
    rep.checks.push_back(c);
  }
  return rep;
}

inline void print_verification(std::ostream& os, const VerificationReport& rep) {
  for (const auto& c : rep.checks) {
    if (!c.applicable) {
      os << "SKIP " << c.name;
    } else {
      os << (c.passed ? "PASS " : "FAIL ") << c.name;
    }
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << '\n';
  }
}

// --- config files ----------------------------------------------------------------

// Plain `key = value` lines, '#' starts a comment. Keys mirror the
// EngineConfig and ExperimentSpec field names.
inline std::map<std::string, std::string> parse_config_file(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
      if (!blank) throw std::invalid_argument("config: expected key = value, got '" + line + "'");
      continue;
    }
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config: empty key");
    kv[key] = val;
  }
  return kv;
}

inline std::vector<Op> parse_operator_set(const std::string& s) {
  std::vector<Op> ops;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) {
    if (!tok.empty()) ops.push_back(op_from_name(tok));
  }
  if (ops.empty()) throw std::invalid_argument("operator_set: empty");
  return ops;
}

inline void apply_config_entry(ExperimentSpec& spec, const std::string& key, const std::string& val) {
  if (key == "algorithm")
    spec.base.algorithm = algorithm_from_name(val);
  else if (key == "d")
    spec.base.d = std::stoi(val);
  else if (key == "omega")
    spec.base.omega = std::stoi(val);
  else if (key == "population_size")
    spec.base.population_size = std::stoi(val);
  else if (key == "mutation_rate")
    spec.base.mutation_rate = std::stod(val);
  else if (key == "max_depth")
    spec.base.max_depth = std::stoi(val);
  else if (key == "operator_set")
    spec.base.operator_set = parse_operator_set(val);
  else if (key == "evaluation_budget")
    spec.base.evaluation_budget = std::stoull(val);
  else if (key == "runs")
    spec.runs = std::stoi(val);
  else if (key == "base_seed")
    spec.base_seed = std::stoull(val);
  else if (key == "output_dir")
    spec.output_dir = val;
  else if (key == "threads")
    spec.threads = static_cast<unsigned>(std::stoul(val));
  else
    throw std::invalid_argument("config: unknown key '" + key + "'");
}

}  // namespace revca
