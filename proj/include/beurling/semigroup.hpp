#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "beurling/measure.hpp"

namespace beurling {

// A generalized prime sequence 1 < p1 <= p2 <= ... Repeated entries are
// distinct generators. `complete` marks a whole finite sequence as opposed to
// a prefix truncated at some bound; tail bounds may be dropped entirely for
// complete lists.
struct PrimeSequence {
  std::vector<double> values;
  bool complete = false;
  std::string generator;  // optional descriptor, e.g. "powers2"

  static PrimeSequence from_values(std::vector<double> v, bool complete_list);
  static PrimeSequence load_csv(std::istream& in, bool complete_list);
};

inline constexpr std::uint64_t kEnumerationGuard = 100'000'000;

// Enumerates the multiplicative semigroup generated by `primes` up to x_max
// with a min-heap seeded at 1; each popped product is extended by every prime
// with generator index >= its own seed index, so each multiset appears once.
// Numerically coincident products merge under the tie tolerance with masses
// added. Throws SizeGuardError past `guard` emitted products.
HalfLineMeasure enumerate_integers(const PrimeSequence& primes, double x_max,
                                   std::uint64_t guard = kEnumerationGuard);

// Cumulative counting queries with an explicit materialized-range guard:
// asking beyond x_max throws RangeError rather than extrapolating.
double count_N(const GeneralizedNumberSystem& sys, double x);
double count_pi(const GeneralizedNumberSystem& sys, double x);

// Number of sequence entries <= x under the tie tolerance.
double count_leq(const std::vector<double>& sorted_values, double x);

}  // namespace beurling
