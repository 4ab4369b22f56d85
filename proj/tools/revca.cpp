// revca command line: exhaustive sweeps, evolutionary searches, rule
// verification and diversity metrics over archive files.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "revca/exhaustive.hpp"
#include "revca/harness.hpp"

namespace fs = std::filesystem;
using namespace revca;

namespace {

int cmd_exhaustive(int d, int omega_opt, bool allow_long, unsigned threads,
                   const std::string& out_csv, const std::string& reps_dir) {
  std::vector<int> omegas;
  if (omega_opt >= 0)
    omegas.push_back(omega_opt);
  else
    for (int w = 0; w < d; ++w) omegas.push_back(w);

  std::ostringstream csv;
  bool header = true;
  for (int w : omegas) {
    ExhaustiveReport rep = exhaustive_search(d, w, allow_long, threads);
    write_report_csv(csv, rep, header);
    header = false;
    if (!reps_dir.empty()) {
      fs::create_directories(reps_dir);
      std::ofstream os(fs::path(reps_dir) /
                       ("d" + std::to_string(d) + "_omega" + std::to_string(w) + ".rules"));
      for (const auto& g : rep.representatives) os << rule_to_text(g, w) << '\n';
    }
  }
  std::cout << csv.str();
  if (!out_csv.empty()) {
    std::ofstream os(out_csv);
    os << csv.str();
  }
  return 0;
}

int cmd_evolve(const ExperimentSpec& spec) {
  auto runs = run_experiment_to_files(spec);
  int solved = 0;
  for (const auto& r : runs)
    if (!run_solutions(r).empty() || !r.front.empty()) ++solved;
  std::cout << "runs=" << runs.size() << " with_output=" << solved << " dir=" << spec.output_dir
            << "\n";
  return 0;
}

int cmd_verify(const std::string& rule_file, int n_min, int n_max, std::uint64_t samples,
               std::uint64_t seed) {
  std::ifstream is(rule_file);
  if (!is) {
    std::cerr << "cannot open rule file: " << rule_file << "\n";
    return 2;
  }
  std::string line;
  bool all_ok = true;
  bool any = false;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    any = true;
    ParsedRule pr = parse_rule_text(line);
    int lo = n_min > 0 ? n_min : pr.rule.diameter();
    int hi = n_max > 0 ? n_max : pr.rule.diameter() + 4;
    std::cout << "rule: " << line << "\n";
    VerificationReport rep = verify_rule(pr, lo, hi, samples, seed);
    print_verification(std::cout, rep);
    all_ok = all_ok && rep.all_passed();
  }
  if (!any) {
    std::cerr << "no rules in file\n";
    return 2;
  }
  return all_ok ? 0 : 1;
}

int cmd_metrics(const std::vector<std::string>& files) {
  std::vector<std::vector<ArchivedSolution>> archives;
  for (const auto& file : files) {
    std::ifstream is(file);
    if (!is) {
      std::cerr << "cannot open archive: " << file << "\n";
      return 2;
    }
    std::vector<ArchivedSolution> archive;
    std::string line;
    while (std::getline(is, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      ParsedRule pr = parse_rule_text(line);
      if (!pr.g) throw std::invalid_argument("archive entry is not a marker rule: " + line);
      FitnessRecord rec =
          FitnessRecord::from_objectives(obj1(*pr.g, pr.rule.offset()), obj2(*pr.g));
      archive.push_back({*pr.g, rec, 0});
    }
    archives.push_back(std::move(archive));
  }
  DiversityReport rep = diversity_metrics(archives);
  std::cout << "UHW,mHW,MHW,USol,USolBest\n"
            << rep.unique_weights << ',' << rep.min_weight << ',' << rep.max_weight << ','
            << rep.unique_solutions << ',' << rep.unique_best_solutions << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conserved-landscape reversible CA search and verification"};
  app.require_subcommand(1);

  // exhaustive
  auto* ex = app.add_subcommand("exhaustive", "enumerate all generating functions (4 <= d <= 6)");
  int ex_d = 4;
  int ex_omega = -1;
  bool ex_long = false;
  unsigned ex_threads = 0;
  std::string ex_out, ex_reps;
  ex->add_option("--d", ex_d, "rule diameter")->required();
  ex->add_option("--omega", ex_omega, "offset; default sweeps 0..d-1");
  ex->add_flag("--allow-long", ex_long, "permit the 2^32-candidate d=6 sweep");
  ex->add_option("--threads", ex_threads, "worker threads (0 = all cores)");
  ex->add_option("--out", ex_out, "also write the CSV here");
  ex->add_option("--reps-dir", ex_reps, "write representative rule files into this directory");

  // evolve
  auto* ev = app.add_subcommand("evolve", "run a batch of seeded evolutionary searches");
  std::string ev_config;
  std::string ev_algorithm, ev_operators, ev_out;
  int ev_d = -1, ev_omega = -1, ev_pop = -1, ev_depth = -2, ev_runs = -1;
  double ev_mut = -1.0;
  std::int64_t ev_budget = -1, ev_base_seed = -1;
  unsigned ev_threads = 0;
  bool ev_threads_set = false;
  ev->add_option("--config", ev_config, "key = value configuration file");
  ev->add_option("--algorithm", ev_algorithm, "SOGA|SOGP|LEXGA|LEXGP|NSGA2");
  ev->add_option("--d", ev_d, "rule diameter");
  ev->add_option("--omega", ev_omega, "offset (interior: 0 < omega < d-1)");
  ev->add_option("--population", ev_pop, "population size");
  ev->add_option("--mutation-rate", ev_mut, "GA per-child mutation probability");
  ev->add_option("--max-depth", ev_depth, "GP maximum tree depth (-1 = d-1)");
  ev->add_option("--operators", ev_operators, "GP operator set, e.g. AND,OR,NOT,ANDC");
  ev->add_option("--budget", ev_budget, "fitness evaluations per run");
  ev->add_option("--runs", ev_runs, "independent runs");
  ev->add_option("--base-seed", ev_base_seed, "run r uses seed base seed + r");
  ev->add_option("--out", ev_out, "output directory");
  ev->add_option("--threads", ev_threads, "worker threads (0 = all cores)")
      ->each([&](const std::string&) { ev_threads_set = true; });

  // verify
  auto* vf = app.add_subcommand("verify", "re-check reversibility of rules in a file");
  std::string vf_file;
  int vf_nmin = 0, vf_nmax = 0;
  std::uint64_t vf_samples = 10000, vf_seed = 1;
  vf->add_option("rule_file", vf_file, "file of rule lines (d=.. omega=.. g=<hex>)")->required();
  vf->add_option("--n-min", vf_nmin, "smallest array length (default d)");
  vf->add_option("--n-max", vf_nmax, "largest array length (default d+4)");
  vf->add_option("--samples", vf_samples, "samples per length when too large to enumerate");
  vf->add_option("--seed", vf_seed, "seed for sampled checks");

  // metrics
  auto* mt = app.add_subcommand("metrics", "diversity metrics over archive files");
  std::vector<std::string> mt_files;
  std::string mt_dir;
  mt->add_option("archives", mt_files, "archive files of rule lines");
  mt->add_option("--dir", mt_dir, "add every *.rules file under this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (ex->parsed()) return cmd_exhaustive(ex_d, ex_omega, ex_long, ex_threads, ex_out, ex_reps);
    if (ev->parsed()) {
      ExperimentSpec spec;
      spec.runs = 50;
      if (!ev_config.empty()) {
        std::ifstream is(ev_config);
        if (!is) {
          std::cerr << "cannot open config file: " << ev_config << "\n";
          return 2;
        }
        for (const auto& [k, v] : parse_config_file(is)) apply_config_entry(spec, k, v);
      }
      if (!ev_algorithm.empty()) spec.base.algorithm = algorithm_from_name(ev_algorithm);
      if (ev_d >= 0) spec.base.d = ev_d;
      if (ev_omega >= 0) spec.base.omega = ev_omega;
      if (ev_pop >= 0) spec.base.population_size = ev_pop;
      if (ev_mut >= 0.0) spec.base.mutation_rate = ev_mut;
      if (ev_depth >= -1) spec.base.max_depth = ev_depth;
      if (!ev_operators.empty()) spec.base.operator_set = parse_operator_set(ev_operators);
      if (ev_budget >= 0) spec.base.evaluation_budget = static_cast<std::uint64_t>(ev_budget);
      if (ev_runs >= 0) spec.runs = ev_runs;
      if (ev_base_seed >= 0) spec.base_seed = static_cast<std::uint64_t>(ev_base_seed);
      if (!ev_out.empty()) spec.output_dir = ev_out;
      if (ev_threads_set) spec.threads = ev_threads;
      return cmd_evolve(spec);
    }
    if (vf->parsed()) return cmd_verify(vf_file, vf_nmin, vf_nmax, vf_samples, vf_seed);
    if (mt->parsed()) {
      if (!mt_dir.empty())
        for (const auto& entry : fs::directory_iterator(mt_dir))
          if (entry.path().extension() == ".rules") mt_files.push_back(entry.path().string());
      std::sort(mt_files.begin(), mt_files.end());
      if (mt_files.empty()) {
        std::cerr << "metrics: no archive files given\n";
        return 2;
      }
      return cmd_metrics(mt_files);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
