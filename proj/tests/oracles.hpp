#pragma once

#include <cstdint>
#include <vector>

// Independent reference implementations used only by tests. Everything here
// avoids the library's own code paths: exponent-vector enumeration instead of
// the heap, PV quadrature instead of the li series, dynamic programming
// instead of the pentagonal recurrence, trial division instead of the
// segmented sieve.
namespace oracles {

// All distinct products of the primes (with multiplicity of representations)
// up to x, by depth-first search over exponent vectors.
struct BruteAtom {
  double x;
  double mass;
};
std::vector<BruteAtom> brute_semigroup_atoms(const std::vector<double>& primes, double x_max);
double brute_semigroup_count(const std::vector<double>& primes, double x);

// PV integral of dt/log t over [0, x]: symmetric pairing across t = 1 plus a
// regular remainder.
double pv_li(double x);

// p(n) by the bounded-parts dynamic program (exact for n <= 100 in 64 bits).
std::vector<std::uint64_t> partition_dp(int n_max);

// Riemann zeta at real s > 1 by truncated sum plus Euler-Maclaurin tail.
double euler_maclaurin_zeta(double s);

// -zeta'(s) at real s > 1 by the same device on the log-weighted sum.
double euler_maclaurin_zeta_prime(double s);

// Primes up to n by trial division.
std::vector<std::uint64_t> trial_division_primes(std::uint64_t n);

// Fixed-grid composite Simpson, independent of the adaptive routine.
double fixed_simpson(double (*f)(double), double a, double b, int panels);

template <typename F>
double fixed_simpson_fn(F&& f, double a, double b, int panels) {
  double h = (b - a) / panels;
  double acc = 0;
  double fa = f(a);
  for (int i = 0; i < panels; ++i) {
    double x0 = a + h * i;
    double fm = f(x0 + 0.5 * h);
    double fb = f(x0 + h);
    acc += h / 6.0 * (fa + 4.0 * fm + fb);
    fa = fb;
  }
  return acc;
}

}  // namespace oracles
