#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "oracles.hpp"
#include "revca/ca.hpp"
#include "revca/fitness.hpp"

using namespace revca;

namespace {

LocalRule rule150() { return rule_from_wolfram(150, 3); }

LocalRule patt_rule() {
  return local_rule_from_generating(
      GeneratingFunction::from_support(3, {input_index({0, 1, 0})}), 1);
}

LocalRule identity_rule(int d, int omega) {
  return local_rule_from_generating(GeneratingFunction::constant_zero(d - 1), omega);
}

LocalRule chi_rule() {
  return local_rule_from_generating(GeneratingFunction::from_support(2, {input_index({1, 0})}), 0);
}

}  // namespace

TEST_CASE("global application of rule 150") {
  Configuration x = Configuration::from_string("101110");
  CHECK(apply_global(rule150(), x).str() == "100100");
}

TEST_CASE("global application of the Patt rule cycles with period two") {
  Configuration x = Configuration::from_string("011001");
  Configuration y = apply_global(patt_rule(), x);
  CHECK(y.str() == "001011");
  CHECK(apply_global(patt_rule(), y) == x);
}

TEST_CASE("identity rule maps every configuration to itself") {
  Rng rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 4 + static_cast<int>(rng.below(12));
    Configuration x = Configuration::from_word(rng.next() & ((1ull << n) - 1),
                                               static_cast<std::size_t>(n));
    CHECK(apply_global(identity_rule(3, 1), x) == x);
  }
}

TEST_CASE("apply_global rejects short arrays") {
  CHECK_THROWS_AS(apply_global(patt_rule(), Configuration::from_string("011")),
                  std::invalid_argument);
}

TEST_CASE("rotation") {
  Configuration x = Configuration::from_string("101110");
  CHECK(rotate(x, 0) == x);
  CHECK(rotate(Configuration::from_string("100000"), 1).str() == "000001");
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 2 + static_cast<int>(rng.below(30));
    Configuration c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c.set_cell(static_cast<std::size_t>(i), rng.coin());
    std::int64_t s = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * n)));
    CHECK(rotate(rotate(c, s), n - s) == c);
  }
}

TEST_CASE("global rule commutes with rotation") {
  Rng rng(7);
  for (int rep = 0; rep < 2000; ++rep) {
    int d = 2 + static_cast<int>(rng.below(6));
    int omega = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
    GeneratingFunction g = GeneratingFunction::random(d, rng);  // arbitrary rule table
    LocalRule f(d, omega, g.table());
    int n = d + static_cast<int>(rng.below(10));
    Configuration x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x.set_cell(static_cast<std::size_t>(i), rng.coin());
    std::int64_t s = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n)));
    CHECK(apply_global(f, rotate(x, s)) == rotate(apply_global(f, x), s));
  }
}

TEST_CASE("apply_global agrees with the per-cell oracle") {
  Rng rng(11);
  for (int rep = 0; rep < 300; ++rep) {
    int d = 2 + static_cast<int>(rng.below(6));
    int omega = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
    GeneratingFunction g = GeneratingFunction::random(d, rng);
    LocalRule f(d, omega, g.table());
    int n = d + static_cast<int>(rng.below(12));
    Configuration x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x.set_cell(static_cast<std::size_t>(i), rng.coin());
    CHECK(apply_global(f, x).str() == oracle::apply_ca(f.table().str(), d, omega, x.str()));
  }
}

TEST_CASE("orbits") {
  OrbitInfo patt = orbit(patt_rule(), Configuration::from_string("011001"));
  CHECK(patt.pre_period == 0);
  CHECK(patt.cycle_length == 2);

  OrbitInfo ident = orbit(identity_rule(3, 1), Configuration::from_string("10110"));
  CHECK(ident.pre_period == 0);
  CHECK(ident.cycle_length == 1);

  OrbitInfo ones = orbit(patt_rule(), Configuration::from_string("111111"));
  CHECK(ones.pre_period == 0);
  CHECK(ones.cycle_length == 1);

  // rule 150 at even length loses information, so orbits have pre-periods
  OrbitInfo r150 = orbit(rule150(), Configuration::from_string("101110"));
  CHECK(r150.pre_period > 0);
}

TEST_CASE("involution checks") {
  CHECK(is_involution_exhaustive(patt_rule(), 6));
  CHECK_FALSE(is_involution_exhaustive(rule150(), 6));
  for (int n = 3; n <= 10; ++n) CHECK(is_involution_exhaustive(identity_rule(3, 1), n));

  // two applications of rule 150 from the worked configuration
  Configuration x = Configuration::from_string("101110");
  Configuration y = apply_global(rule150(), x);
  CHECK(y.str() == "100100");
  CHECK(apply_global(rule150(), y).str() == "111111");

  CHECK(is_involution_sampled(patt_rule(), 30, 2000, 99));
  CHECK_FALSE(is_involution_sampled(rule150(), 30, 2000, 99));
  CHECK_THROWS_AS(is_involution_exhaustive(patt_rule(), 25), std::invalid_argument);
}

TEST_CASE("bijectivity checks") {
  CHECK(is_bijective(chi_rule(), 5));
  CHECK_FALSE(is_bijective(chi_rule(), 4));
  CHECK_FALSE(is_bijective(rule150(), 6));

  // the collision behind rule 150's failure at n = 6
  CHECK(apply_global(rule150(), Configuration::from_string("110110")).str() == "000000");
  CHECK(apply_global(rule150(), Configuration::from_string("000000")).str() == "000000");

  CHECK_THROWS_AS(is_bijective(chi_rule(), 25), std::invalid_argument);
}

TEST_CASE("involutions are bijective and bijective orbits have no pre-period") {
  Rng rng(13);
  int involutions_seen = 0;
  for (int rep = 0; rep < 400; ++rep) {
    int d = 2 + static_cast<int>(rng.below(3));
    int omega = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
    GeneratingFunction g = GeneratingFunction::random(d, rng);
    LocalRule f(d, omega, g.table());
    int n = d + static_cast<int>(rng.below(4));
    if (is_involution_exhaustive(f, n)) {
      ++involutions_seen;
      CHECK(is_bijective(f, n));
    }
    if (is_bijective(f, n)) {
      for (int probe = 0; probe < 5; ++probe) {
        Configuration x = Configuration::from_word(rng.next() & ((1ull << n) - 1),
                                                   static_cast<std::size_t>(n));
        CHECK(orbit(f, x).pre_period == 0);
      }
    }
  }
  CHECK(involutions_seen > 0);
}

TEST_CASE("space-time trace") {
  std::ostringstream os;
  write_trace(patt_rule(), Configuration::from_string("011001"), 2, os);
  CHECK(os.str() == "011001\n001011\n011001\n");
}
