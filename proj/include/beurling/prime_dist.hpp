#pragma once

#include <functional>
#include <vector>

#include "beurling/semigroup.hpp"

namespace beurling {

// Pi(x) = sum_{j>=1} pi(x^{1/j}) / j; the sum stops at the first j with
// x^{1/j} < p1, so it is always finite.
double riemann_pi_from_pi(const PrimeSequence& primes, double x);

// Atom form of the same object: mass 1/j at every p^j <= x_max.
HalfLineMeasure riemann_pi_measure(const PrimeSequence& primes, double x_max,
                                   std::uint64_t guard = kEnumerationGuard);

// Moebius inversion pi(x) = sum_j mu(j)/j Pi(x^{1/j}); PiFn evaluates Pi and
// p1 is the least prime (it fixes the cutoff).
double pi_from_riemann_pi(const std::function<double(double)>& PiFn, double p1, double x);

int moebius(int n);

struct GapCheckRow {
  double x;
  double pi;
  double Pi;
  double gap;    // Pi - pi
  double bound;  // pi(sqrt x) + pi(cbrt x) log x / log p1
};

struct GapCheckReport {
  std::vector<GapCheckRow> rows;
  double worst_slack = 0;  // min over rows of bound - gap
  bool violation = false;  // gap < 0 or gap > bound anywhere
};

// Checks 0 <= Pi(x) - pi(x) <= pi(x^{1/2}) + pi(x^{1/3}) log x / log p1 on the
// grid. A violation is a report outcome (it falsifies the implementation),
// not an exception.
GapCheckReport chebyshev_gap_check(const PrimeSequence& primes, const std::vector<double>& grid);

}  // namespace beurling
