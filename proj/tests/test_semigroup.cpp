#include <doctest.h>

#include <cmath>

#include "beurling/prime_dist.hpp"
#include "beurling/semigroup.hpp"
#include "oracles.hpp"

using namespace beurling;

TEST_CASE("powers of two enumerate to N(10) = 4") {
  auto dN = enumerate_integers(PrimeSequence::from_values({2}, true), 10.0);
  REQUIRE(dN.atom_count() == 4);
  CHECK(dN.atom_x()[3] == 8.0);
  CHECK(dN.cumulative(10.0) == 4.0);
}

TEST_CASE("primes {2,3} give seven products up to 10") {
  auto dN = enumerate_integers(PrimeSequence::from_values({2, 3}, true), 10.0);
  CHECK(dN.cumulative(10.0) == 7.0);  // 1 2 3 4 6 8 9
  CHECK(dN.cumulative(10.0) == oracles::brute_semigroup_count({2, 3}, 10.0));
}

TEST_CASE("rational primes to 100 rebuild the integers") {
  auto primes = oracles::trial_division_primes(100);
  std::vector<double> pv(primes.begin(), primes.end());
  auto dN = enumerate_integers(PrimeSequence::from_values(pv, false), 100.0);
  for (int x = 1; x <= 100; ++x) CHECK(dN.cumulative(double(x)) == double(x));
  // every atom mass is exactly 1: unique factorization
  for (double m : dN.atom_mass()) CHECK(m == 1.0);
}

TEST_CASE("repeated prime entries are distinct generators") {
  auto dN = enumerate_integers(PrimeSequence::from_values({2, 2}, true), 9.0);
  CHECK(dN.cumulative(1.0) == 1.0);
  CHECK(dN.cumulative(2.0) == 3.0);  // 1 and two copies of 2
  CHECK(dN.cumulative(4.0) == 6.0);  // plus three multisets of value 4
  CHECK(dN.cumulative(8.0) == 10.0);
}

TEST_CASE("irrational-ish primes match the brute oracle") {
  std::vector<double> primes{2.0, 3.1, 5.7};
  auto dN = enumerate_integers(PrimeSequence::from_values(primes, true), 1000.0);
  for (double x = 1.5; x < 1000; x *= 1.7)
    CHECK(dN.cumulative(x) ==
          doctest::Approx(oracles::brute_semigroup_count(primes, x)).epsilon(1e-12));
}

TEST_CASE("enumeration guard trips") {
  auto primes = oracles::trial_division_primes(2000);
  std::vector<double> pv(primes.begin(), primes.end());
  CHECK_THROWS_AS(enumerate_integers(PrimeSequence::from_values(pv, false), 2000.0, 500),
                  SizeGuardError);
}

TEST_CASE("enumerate rejects x_max below 1") {
  CHECK_THROWS_AS(enumerate_integers(PrimeSequence::from_values({2}, true), 0.5),
                  DomainError);
}

TEST_CASE("count_N and count_pi guard the materialized range") {
  GeneralizedNumberSystem sys;
  sys.label = "tiny";
  sys.x_max = 100.0;
  sys.primes = std::vector<double>{2, 3, 5, 7};
  sys.dN = enumerate_integers(PrimeSequence::from_values(*sys.primes, true), 100.0);
  sys.dPi = riemann_pi_measure(PrimeSequence::from_values(*sys.primes, true), 100.0);

  CHECK(count_N(sys, 1.0) == 1.0);
  CHECK(count_pi(sys, 6.0) == 3.0);
  CHECK_THROWS_AS(count_N(sys, 1000.0), RangeError);
  CHECK_THROWS_AS(count_pi(sys, 1000.0), RangeError);
}

TEST_CASE("counting queries are stable at re-exponentiated boundaries") {
  // products like 2*3 land within one ulp of the integer; boundary queries
  // must still include them
  auto dN = enumerate_integers(PrimeSequence::from_values({2, 3}, true), 1 << 20);
  CHECK(dN.cumulative(std::exp(std::log(2.0) + std::log(3.0))) ==
        dN.cumulative(6.0));
  CHECK(dN.cumulative(std::pow(2.0, 20)) == dN.cumulative(double(1 << 20)));
}

TEST_CASE("monotone counting") {
  auto dN = enumerate_integers(PrimeSequence::from_values({2, 3, 5, 7}, true), 5000.0);
  double prev = 0;
  for (double x = 1; x < 5000; x *= 1.33) {
    double c = dN.cumulative(x);
    CHECK(c >= prev);
    prev = c;
  }
}
