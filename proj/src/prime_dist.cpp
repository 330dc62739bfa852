#include "beurling/prime_dist.hpp"

#include <cmath>

namespace beurling {

namespace {

// Largest j with x^{1/j} >= p1, with tie slack so exact powers terminate right.
int max_root_order(double x, double p1) {
  if (x < p1 && !log_close(x, p1)) return 0;
  double r = std::log(x) / std::log(p1);
  return int(std::floor(r + 64 * kTieEps * std::max(1.0, r)));
}

double root(double x, int j) { return std::exp(std::log(x) / j); }

}  // namespace

double riemann_pi_from_pi(const PrimeSequence& primes, double x) {
  if (!(x >= 1)) return 0;
  if (primes.values.empty()) return 0;
  const double p1 = primes.values.front();
  int J = max_root_order(x, p1);
  double total = 0;
  for (int j = 1; j <= J; ++j)
    total += count_leq(primes.values, root(x, j)) / j;
  return total;
}

HalfLineMeasure riemann_pi_measure(const PrimeSequence& primes, double x_max,
                                   std::uint64_t guard) {
  std::vector<Atom> pts;
  for (double p : primes.values) {
    if (p > x_max && !log_close(p, x_max)) break;
    double v = p;
    for (int j = 1; v <= x_max || log_close(v, x_max); ++j) {
      pts.push_back({v, 1.0 / j});
      if (pts.size() > guard) throw SizeGuardError("riemann_pi_measure atom guard");
      v *= p;
    }
  }
  return HalfLineMeasure::from_points(std::move(pts), false);
}

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

double pi_from_riemann_pi(const std::function<double(double)>& PiFn, double p1, double x) {
  if (x < p1 && !log_close(x, p1)) return 0;
  int J = max_root_order(x, p1);
  double total = 0;
  for (int j = 1; j <= J; ++j) {
    int mu = moebius(j);
    if (mu != 0) total += mu * PiFn(root(x, j)) / j;
  }
  return total;
}

GapCheckReport chebyshev_gap_check(const PrimeSequence& primes,
                                   const std::vector<double>& grid) {
  GapCheckReport rep;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  const double p1 = primes.values.empty() ? 2.0 : primes.values.front();
  for (double x : grid) {
    GapCheckRow row;
    row.x = x;
    row.pi = count_leq(primes.values, x);
    row.Pi = riemann_pi_from_pi(primes, x);
    row.gap = row.Pi - row.pi;
    row.bound = x >= 1 ? count_leq(primes.values, std::sqrt(x)) +
                             count_leq(primes.values, std::cbrt(x)) * std::log(x) / std::log(p1)
                       : 0;
    if (row.gap < -1e-9 || row.gap > row.bound + 1e-9) rep.violation = true;
    rep.worst_slack = std::min(rep.worst_slack, row.bound - row.gap);
    rep.rows.push_back(row);
  }
  if (rep.rows.empty()) rep.worst_slack = 0;
  return rep;
}

}  // namespace beurling
