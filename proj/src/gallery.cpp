#include "beurling/gallery.hpp"

#include <algorithm>
#include <cmath>

#include "beurling/asymptotics.hpp"
#include "beurling/prime_dist.hpp"

namespace beurling {

// ---------------------------------------------------------------------------
// partitions
// ---------------------------------------------------------------------------

std::vector<BigNat> partition_numbers(int n_max) {
  if (n_max < 0 || n_max > 100000)
    throw ParameterError("partition_numbers supports 0 <= n_max <= 1e5");
  std::vector<BigNat> p(n_max + 1);
  p[0] = BigNat(1);
  for (int n = 1; n <= n_max; ++n) {
    BigNat plus, minus;
    for (int k = 1;; ++k) {
      long g1 = long(k) * (3 * k - 1) / 2;
      long g2 = long(k) * (3 * k + 1) / 2;
      if (g1 > n && g2 > n) break;
      BigNat& dst = (k % 2) ? plus : minus;
      if (g1 <= n) dst.add(p[n - g1]);
      if (g2 <= n) dst.add(p[n - g2]);
    }
    plus.sub(minus);
    p[n] = std::move(plus);
  }
  return p;
}

double hardy_ramanujan(double n) {
  if (!(n >= 1)) throw DomainError("hardy_ramanujan needs n >= 1");
  return std::exp(M_PI * std::sqrt(2.0 * n / 3.0)) / (4.0 * n * std::sqrt(3.0));
}

double partition_system_asymptote(double x) {
  const double log2 = std::log(2.0);
  const double A = std::sqrt(log2) / (2.0 * M_PI * std::sqrt(2.0));
  double L = std::log(x);
  return A * std::exp(M_PI * std::sqrt(2.0 * L / (3.0 * log2))) / std::sqrt(L);
}

// ---------------------------------------------------------------------------
// sieve
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kSegmentWidth = 1u << 20;

// Streams primes <= limit in order into visit(p); returns the count.
template <typename Fn>
std::uint64_t stream_primes(std::uint64_t limit, Fn&& visit) {
  if (limit < 2) return 0;
  std::uint64_t root = std::uint64_t(std::sqrt(double(limit))) + 2;
  while (root * root > limit + 1) --root;
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }
  std::uint64_t count = 0;
  std::vector<char> seg(kSegmentWidth);
  for (std::uint64_t low = 2; low <= limit; low += kSegmentWidth) {
    std::uint64_t high = std::min(low + kSegmentWidth - 1, limit);
    std::fill(seg.begin(), seg.begin() + (high - low + 1), 1);
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
      for (std::uint64_t j = start; j <= high; j += p) seg[j - low] = 0;
    }
    for (std::uint64_t v = low; v <= high; ++v) {
      if (seg[v - low]) {
        ++count;
        visit(v, count);
      }
    }
  }
  return count;
}

}  // namespace

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  if (limit > 2'000'000'000ull)
    throw SizeGuardError("sieve limit beyond the 2e9 desk-scale guard");
  std::vector<std::uint64_t> primes;
  if (limit >= 10)
    primes.reserve(std::size_t(double(limit) / (std::log(double(limit)) - 1.1)));
  stream_primes(limit, [&](std::uint64_t p, std::uint64_t) { primes.push_back(p); });
  return primes;
}

std::vector<double> sparse_indexed_primes(std::uint64_t limit) {
  if (limit > 2'000'000'000ull)
    throw SizeGuardError("sieve limit beyond the 2e9 desk-scale guard");
  std::vector<double> selected;
  std::uint64_t next_index = 1;  // 1, 2, 4, 8, ...
  stream_primes(limit, [&](std::uint64_t p, std::uint64_t count) {
    if (count == next_index) {
      selected.push_back(double(p));
      next_index *= 2;
    }
  });
  return selected;
}

// ---------------------------------------------------------------------------
// growth-model fitting
// ---------------------------------------------------------------------------

namespace {

// C = headroom * sup over the top decade of values(x) log^gamma x / x.
TailModel fit_cum_model(const std::function<double(double)>& cum, double X, double gamma,
                        double floor_C, double headroom = 1.3, bool cesaro = false) {
  double sup = 0;
  for (double x : geometric_grid(std::max(4.0, X / 10), X, 48))
    sup = std::max(sup, cum(x) * std::pow(std::log(x), gamma) / x);
  TailModel tm;
  tm.C = std::max(floor_C, headroom * sup);
  tm.gamma = gamma;
  tm.cesaro_sense = cesaro;
  return tm;
}

int remainder_gamma_for(double x_max) {
  // largest gamma with x/log^gamma x comfortably >= the bounded remainder
  double L = std::log(x_max);
  int g = int(std::floor(std::log(x_max / 2.0) / std::log(L)));
  return std::clamp(g, 2, 5);
}

}  // namespace

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

GeneralizedNumberSystem system_from_primes(std::vector<double> primes, bool complete,
                                           double x_max, std::string label) {
  PrimeSequence seq = PrimeSequence::from_values(std::move(primes), complete);
  GeneralizedNumberSystem sys;
  sys.label = std::move(label);
  sys.x_max = x_max;
  sys.dN = enumerate_integers(seq, x_max);
  sys.dPi = riemann_pi_measure(seq, x_max);
  sys.primes = seq.values;
  sys.primes_complete = complete;
  auto Ncum = [&](double x) { return sys.dN.cumulative(x); };
  auto Pcum = [&](double x) { return sys.dPi.cumulative(x); };
  sys.n_cum_bound = fit_cum_model(Ncum, x_max, 3.0, 1.0);
  sys.pi_cum_bound = fit_cum_model(Pcum, x_max, 2.0, 1.0);
  sys.validate();
  return sys;
}

GeneralizedNumberSystem system_ordinary(double x_max) {
  if (!(x_max >= 100)) throw DomainError("ordinary system needs x_max >= 100");
  std::vector<std::uint64_t> ps = sieve_primes(std::uint64_t(x_max));
  std::vector<double> primes(ps.begin(), ps.end());
  PrimeSequence seq = PrimeSequence::from_values(primes, false);

  GeneralizedNumberSystem sys;
  sys.label = "ordinary";
  sys.x_max = x_max;
  sys.dN = enumerate_integers(seq, x_max);
  sys.dPi = riemann_pi_measure(seq, x_max);
  sys.primes = std::move(primes);
  sys.primes_complete = false;
  sys.density_a = 1.0;
  sys.exact_N = [](double x) { return std::floor(x + 1e-9); };
  sys.exact_N_integer_steps = true;
  sys.exact_pi = [list = *sys.primes](double x) { return count_leq(list, x); };

  auto Ncum = [&](double x) { return sys.dN.cumulative(x); };
  auto Pcum = [&](double x) { return sys.dPi.cumulative(x); };
  sys.n_cum_bound = fit_cum_model(Ncum, x_max, 0.0, 1.0, 1.05);
  sys.pi_cum_bound = fit_cum_model(Pcum, x_max, 1.0, 1.0);
  int g = remainder_gamma_for(x_max);
  sys.n_remainder_bound = fit_cum_model(
      [&](double x) { return std::abs(sys.dN.cumulative(x) - x); }, x_max, double(g), 1.0);
  sys.pi_remainder_bound = fit_cum_model(
      [&](double x) { return std::abs(Pcum(x) - (x >= 2 ? Li(x) : 0.0)); }, x_max, 3.0,
      0.5);
  sys.validate();
  return sys;
}

GeneralizedNumberSystem system_powers_of_two(double x_max) {
  if (!(x_max >= 2)) throw DomainError("powers2 system needs x_max >= 2");
  int m_top = int(std::floor(std::log2(x_max) + 64 * kTieEps));
  // pre-guard: the enumeration will emit sum_{m<=m_top} p(m) products
  if (m_top > 600)
    throw SizeGuardError("powers2: partition growth exceeds the atom guard");
  {
    std::vector<BigNat> p = partition_numbers(m_top);
    double expected = 0;
    for (const BigNat& v : p) expected += v.to_double();
    if (expected > double(kEnumerationGuard))
      throw SizeGuardError("powers2: expected " + format_double(expected) +
                           " products, beyond the atom guard");
  }
  std::vector<double> primes;
  for (int k = 1; k <= m_top; ++k) primes.push_back(std::ldexp(1.0, k));
  PrimeSequence seq = PrimeSequence::from_values(primes, false);

  GeneralizedNumberSystem sys;
  sys.label = "powers2";
  sys.x_max = x_max;
  sys.dN = enumerate_integers(seq, x_max);
  sys.dPi = riemann_pi_measure(seq, x_max);
  sys.primes = std::move(primes);
  sys.primes_complete = false;
  sys.exact_pi = [](double x) {
    return x >= 2 ? std::floor(std::log2(x) * (1 + 64 * kTieEps)) : 0.0;
  };

  auto Ncum = [&](double x) { return sys.dN.cumulative(x); };
  auto Pcum = [&](double x) { return sys.dPi.cumulative(x); };
  sys.n_cum_bound = fit_cum_model(Ncum, x_max, 4.0, 1.0);
  sys.pi_cum_bound = fit_cum_model(Pcum, x_max, 2.0, 1.0);
  sys.validate();
  return sys;
}

GeneralizedNumberSystem system_sparse_rational_primes(double x_max) {
  if (!(x_max >= 100)) throw DomainError("sparse2k system needs x_max >= 100");
  if (x_max > 1e9 + 1) throw SizeGuardError("sparse2k sieve capped at 1e9");
  std::vector<double> primes = sparse_indexed_primes(std::uint64_t(x_max));
  PrimeSequence seq = PrimeSequence::from_values(primes, false);

  GeneralizedNumberSystem sys;
  sys.label = "sparse2k";
  sys.x_max = x_max;
  sys.dN = enumerate_integers(seq, x_max);
  sys.dPi = riemann_pi_measure(seq, x_max);
  sys.primes = std::move(primes);
  sys.primes_complete = false;

  auto Ncum = [&](double x) { return sys.dN.cumulative(x); };
  auto Pcum = [&](double x) { return sys.dPi.cumulative(x); };
  sys.n_cum_bound = fit_cum_model(Ncum, x_max, 1.0, 1.0);
  sys.pi_cum_bound = fit_cum_model(Pcum, x_max, 2.0, 1.0);
  sys.validate();
  return sys;
}

GeneralizedNumberSystem system_continuous_alpha(double alpha, double x_max, int bins) {
  if (!(alpha > 1)) throw DomainError("continuous-alpha needs alpha > 1");
  if (!(x_max >= 10)) throw DomainError("continuous-alpha needs x_max >= 10");
  if (bins <= 0) bins = 1 << 14;
  if (bins < 64 || bins > (1 << 22)) throw ParameterError("bins out of range");

  const double U = std::log(x_max);
  // prime density in u-coordinates: (1 - cos(u^alpha))/u * e^u, -> 0 at u = 0
  auto density_u = [&](double u) {
    if (u <= 0) return 0.0;
    if (u < 1e-4) {
      double ua = std::pow(u, alpha);
      return 0.5 * ua * ua / u * std::exp(u);
    }
    return (1.0 - std::cos(std::pow(u, alpha))) / u * std::exp(u);
  };
  auto build_dPi = [&](int B) {
    DensityBins b;
    b.u0 = 0;
    b.du = U / B;
    b.mass.resize(B);
    for (int i = 0; i < B; ++i) {
      double ua = i * b.du, ub = ua + b.du;
      double fm = density_u(0.5 * (ua + ub));
      b.mass[i] = b.du / 6.0 * (density_u(ua) + 4.0 * fm + density_u(ub));
    }
    return HalfLineMeasure::with_density({}, std::move(b), false);
  };

  GeneralizedNumberSystem sys;
  sys.label = "continuous-alpha:" + format_double(alpha);
  sys.x_max = x_max;
  sys.dPi = build_dPi(bins);
  ExpStarResult coarse = exp_star(build_dPi(bins / 2), x_max, 1e-9);
  ExpStarResult fine = exp_star(sys.dPi, x_max, 1e-9);
  sys.dN = fine.measure;
  double disc = 0;
  for (double x : geometric_grid(2.0, x_max, 64))
    disc = std::max(disc,
                    std::abs(fine.measure.cumulative(x) - coarse.measure.cumulative(x)));
  sys.dN_construction_error = disc;

  auto Ncum = [&](double x) { return sys.dN.cumulative(x); };
  auto Pcum = [&](double x) { return sys.dPi.cumulative(x); };
  sys.n_cum_bound = fit_cum_model(Ncum, x_max, 0.0, 1.0, 1.1);
  sys.pi_cum_bound = fit_cum_model(Pcum, x_max, 1.0, 1.0);
  // pointwise prime remainder: |Pi - Li| oscillates at scale x/log^alpha x
  sys.pi_remainder_bound = fit_cum_model(
      [&](double x) { return std::abs(Pcum(x) - (x >= 2 ? Li(x) : 0.0)); }, x_max,
      alpha, 0.5);

  // density exists for these systems; fit it from the top decade
  double mean = 0;
  auto grid = geometric_grid(x_max / 10, x_max, 32);
  for (double x : grid) mean += Ncum(x) / x;
  sys.density_a = mean / double(grid.size());

  // the integer remainder obeys an x/log^gamma x bound in the averaged
  // (Riesz-mean) sense only; declare that model and fit its constant against
  // the order-2 means, flagging it so scans damp their truncation
  {
    double sup = 0;
    for (double x : geometric_grid(x_max / 10, x_max, 12))
      sup = std::max(sup, std::abs(cesaro_mean_remainder(sys, RemainderTarget::n_minus_ax,
                                                         *sys.density_a, 2, x)) *
                              std::pow(std::log(x), 6.0) / x);
    sys.n_remainder_bound = TailModel{std::max(1.0, 1.5 * sup), 6.0, true};
  }
  sys.validate();
  return sys;
}

GeneralizedNumberSystem build_system(const std::string& name, double x_max, int bins) {
  if (name == "ordinary") return system_ordinary(x_max);
  if (name == "powers2") return system_powers_of_two(x_max);
  if (name == "sparse2k") return system_sparse_rational_primes(x_max);
  const std::string prefix = "continuous-alpha:";
  if (name.rfind(prefix, 0) == 0) {
    double alpha = std::strtod(name.c_str() + prefix.size(), nullptr);
    return system_continuous_alpha(alpha, x_max, bins);
  }
  throw SpecError("unknown gallery system '" + name + "'");
}

std::vector<std::string> gallery_names() {
  return {"ordinary", "powers2", "sparse2k", "continuous-alpha:<alpha>"};
}

}  // namespace beurling
