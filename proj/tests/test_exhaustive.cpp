#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "revca/ca.hpp"
#include "revca/debruijn.hpp"
#include "revca/exhaustive.hpp"

using namespace revca;

TEST_CASE("exhaustive counts at diameter 4") {
  std::vector<std::uint64_t> reduced;
  for (int omega = 0; omega < 4; ++omega) {
    ExhaustiveReport rep = exhaustive_search(4, omega);
    reduced.push_back(rep.reduced_count);
    CHECK(rep.raw_optimal_count == 1 + 2 * rep.reduced_count);
    if (omega == 1 || omega == 2) CHECK(rep.weights == std::set<int>{1});
  }
  CHECK(reduced == std::vector<std::uint64_t>{0, 1, 1, 0});
}

TEST_CASE("exhaustive counts at diameter 5") {
  std::vector<std::uint64_t> reduced;
  std::vector<std::set<int>> weights;
  for (int omega = 0; omega < 5; ++omega) {
    ExhaustiveReport rep = exhaustive_search(5, omega);
    reduced.push_back(rep.reduced_count);
    weights.push_back(rep.weights);
    CHECK(rep.raw_optimal_count == 1 + 2 * rep.reduced_count);
  }
  CHECK(reduced == std::vector<std::uint64_t>{0, 2, 5, 2, 0});
  CHECK(weights[1] == std::set<int>{1});
  CHECK(weights[2] == std::set<int>{1, 2});
  CHECK(weights[3] == std::set<int>{1});
}

TEST_CASE("offset symmetry of the counts") {
  for (int d : {4, 5}) {
    for (int omega = 0; omega < d; ++omega) {
      ExhaustiveReport a = exhaustive_search(d, omega);
      ExhaustiveReport b = exhaustive_search(d, d - 1 - omega);
      CHECK(a.reduced_count == b.reduced_count);
      CHECK(a.weights == b.weights);
    }
  }
}

TEST_CASE("representatives are genuinely reversible") {
  for (int omega = 1; omega <= 3; ++omega) {
    ExhaustiveReport rep = exhaustive_search(5, omega);
    for (const auto& g : rep.representatives) {
      CHECK(obj1(g, omega) == 0);
      LocalRule f = local_rule_from_generating(g, omega);
      for (int n = 5; n <= 9; ++n) CHECK(is_involution_exhaustive(f, n));
      CHECK(sutner_reversible(f));
    }
  }
}

TEST_CASE("the lone diameter-4 rule is Patt's") {
  ExhaustiveReport rep = exhaustive_search(4, 1);
  REQUIRE(rep.representatives.size() == 1);
  GeneratingFunction patt = GeneratingFunction::from_support(3, {input_index({0, 1, 0})});
  CHECK(rep.representatives[0] == canonical_representative(patt));
}

TEST_CASE("canonical representative") {
  GeneratingFunction zero = GeneratingFunction::constant_zero(3);
  CHECK(canonical_representative(zero) == zero);

  GeneratingFunction a = GeneratingFunction::from_support(3, {input_index({1, 0, 1})});
  GeneratingFunction b = GeneratingFunction::from_support(3, {input_index({0, 1, 0})});
  CHECK(canonical_representative(a) == canonical_representative(b));

  Rng rng(5);
  for (int rep = 0; rep < 30; ++rep) {
    GeneratingFunction g = GeneratingFunction::random(4, rng);
    GeneratingFunction c = canonical_representative(g);
    CHECK(canonical_representative(c) == c);
    CHECK((c == g || c == complement_input(g)));
  }
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(exhaustive_search(6, 2), std::invalid_argument);
  CHECK_THROWS_AS(exhaustive_search(7, 2, true), std::invalid_argument);
  CHECK_THROWS_AS(exhaustive_search(4, 4), std::invalid_argument);
  CHECK_THROWS_WITH(exhaustive_search(6, 2), Catch::Matchers::ContainsSubstring("--allow-long"));
}

TEST_CASE("report csv schema") {
  ExhaustiveReport rep = exhaustive_search(4, 1);
  std::ostringstream os;
  write_report_csv(os, rep);
  std::string s = os.str();
  CHECK(s.rfind("d,omega,reduced_count,weights,raw_count,seconds\n4,1,1,1,3,", 0) == 0);

  ExhaustiveReport empty = exhaustive_search(4, 0);
  std::ostringstream os2;
  write_report_csv(os2, empty, false);
  CHECK(os2.str().rfind("4,0,0,-,1,", 0) == 0);
}

TEST_CASE("exhaustive agrees with the evaluator on every diameter-4 candidate") {
  for (int omega = 0; omega < 4; ++omega) {
    FitnessEvaluator fe(4, omega);
    ExhaustiveReport rep = exhaustive_search(4, omega);
    std::uint64_t raw = 0;
    for (std::uint64_t t = 0; t < 256; ++t)
      raw += fe.obj1(GeneratingFunction(3, BitTable::from_word(t, 8))) == 0;
    CHECK(raw == rep.raw_optimal_count);
  }
}
