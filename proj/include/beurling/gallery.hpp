#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "beurling/bignat.hpp"
#include "beurling/measure.hpp"
#include "beurling/semigroup.hpp"

namespace beurling {

// Exact p(0..n_max) by the pentagonal-number recurrence
// p(n) = sum_k (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)].
std::vector<BigNat> partition_numbers(int n_max);

// e^{pi sqrt(2n/3)} / (4 n sqrt(3)), the leading partition asymptotic.
double hardy_ramanujan(double n);

// A e^{pi sqrt(2 log x / (3 log 2))} / sqrt(log x) with
// A = sqrt(log 2) / (2 pi sqrt 2): the integer-counting asymptote of the
// powers-of-two system.
double partition_system_asymptote(double x);

// Segmented Eratosthenes (2^20-wide segments). Returns all primes <= limit.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

// The subsequence p_1, p_2, p_4, p_8, ... of rational primes up to limit,
// found by streaming the sieve without storing intermediate primes.
std::vector<double> sparse_indexed_primes(std::uint64_t limit);

// Gallery builders. Every system arrives validated, with comparators and
// desk-scale growth declarations attached.
GeneralizedNumberSystem system_ordinary(double x_max);
GeneralizedNumberSystem system_powers_of_two(double x_max);
GeneralizedNumberSystem system_sparse_rational_primes(double x_max);
GeneralizedNumberSystem system_continuous_alpha(double alpha, double x_max, int bins);
GeneralizedNumberSystem system_from_primes(std::vector<double> primes, bool complete,
                                           double x_max, std::string label);

// Names: ordinary, powers2, sparse2k, continuous-alpha:<alpha>.
GeneralizedNumberSystem build_system(const std::string& name, double x_max, int bins);
std::vector<std::string> gallery_names();

}  // namespace beurling
