#include "beurling/zeta.hpp"

#include <algorithm>
#include <cmath>

namespace beurling {

namespace {

double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

const TailModel& require_model(const std::optional<TailModel>& tm, const char* what) {
  if (!tm) throw DivergenceError(std::string("missing tail model: ") + what);
  return *tm;
}

}  // namespace

// ---------------------------------------------------------------------------
// G^(n) through the signed remainder integral
// ---------------------------------------------------------------------------

GDerivMulti g_derivative_multi(const GeneralizedNumberSystem& sys, double a,
                               const std::vector<int>& nlist, Complex s, double X,
                               const TailModel& tm, int riesz_order) {
  const double sigma = s.real();
  if (sigma < 1.0 - 1e-12)
    throw DivergenceError("remainder path needs Re s >= 1");
  if (!(X > 3) || X > sys.x_max * (1 + 1e-9))
    throw RangeError("g evaluation cutoff outside materialized range");
  const double U = std::log(X);
  const int r = riesz_order;
  const std::size_t K = nlist.size();
  int n_max = 0;
  for (int n : nlist) {
    if (n < 0) throw ParameterError("derivative order must be >= 0");
    n_max = std::max(n_max, n);
  }

  GDerivMulti out;
  out.values.assign(K, Complex{0, 0});
  out.errors.assign(K, 0.0);

  // tail declarations first: they also gate gamma > n + 1
  for (std::size_t k = 0; k < K; ++k)
    out.errors[k] = signed_tail_bound(nlist[k], s, X, tm) +
                    sys.dN_construction_error * factorial(nlist[k]) * (1 + std::abs(s));

  // atom part of dN
  const auto& xs = sys.dN.atom_x();
  const auto& ms = sys.dN.atom_mass();
  const double bound = X * std::exp(kTieEps * std::max(1.0, U));
  std::vector<double> powers(n_max + 1);
  std::vector<double> abs_acc(K, 0.0);
  std::size_t used = 0;
  for (std::size_t i = 0; i < xs.size() && xs[i] <= bound; ++i) {
    double lx = std::log(xs[i]);
    double w = 1;
    if (r > 0) {
      double base = std::max(0.0, 1.0 - lx / U);
      for (int q = 0; q < r; ++q) w *= base;
    }
    double damp = ms[i] * w * std::exp(-sigma * lx);
    Complex ker = std::exp(Complex(0.0, -s.imag() * lx)) * damp;
    powers[0] = 1;
    for (int q = 1; q <= n_max; ++q) powers[q] = powers[q - 1] * (-lx);
    for (std::size_t k = 0; k < K; ++k) {
      out.values[k] += ker * powers[nlist[k]];
      abs_acc[k] += std::abs(damp * powers[nlist[k]]);
    }
    ++used;
  }
  // worst-case rounding of the plain summation
  for (std::size_t k = 0; k < K; ++k)
    out.errors[k] += abs_acc[k] * double(used) * 2.3e-16;

  // binned density part of dN: per-bin Simpson sharing the kernel evaluations
  if (sys.dN.density()) {
    const DensityBins& b = *sys.dN.density();
    const double as = std::abs(s);
    for (std::size_t i = 0; i < b.mass.size(); ++i) {
      double ua = b.u0 + i * b.du;
      double ub = ua + b.du;
      if (ua >= U) break;
      double cut = std::min(ub, U);
      double m = b.mass[i] * (cut - ua) / b.du;
      if (m == 0) continue;
      double nodes[3] = {ua, 0.5 * (ua + cut), cut};
      double wsimp[3] = {1.0 / 6, 4.0 / 6, 1.0 / 6};
      Complex acc[3];
      for (int j = 0; j < 3; ++j) {
        double u = nodes[j];
        double w = 1;
        if (r > 0) {
          double base = std::max(0.0, 1.0 - u / U);
          for (int q = 0; q < r; ++q) w *= base;
        }
        acc[j] = std::exp(Complex(-sigma * u, -s.imag() * u)) * w;
      }
      for (std::size_t k = 0; k < K; ++k) {
        int n = nlist[k];
        Complex seg{0, 0};
        for (int j = 0; j < 3; ++j) {
          double p = 1;
          for (int q = 0; q < n; ++q) p *= -nodes[j];
          seg += wsimp[j] * p * acc[j];
        }
        out.values[k] += m * seg;
        double utop = std::max(std::abs(ua), std::abs(cut));
        double deriv = (n > 0 ? n * std::pow(utop, n - 1) : 0.0) +
                       (as + (r > 0 ? r / U : 0.0)) * std::pow(utop, n);
        out.errors[k] += std::abs(m) * deriv * std::exp(-sigma * ua) * (cut - ua) * 0.5;
      }
    }
  }

  // drift -a x^{-s} dx on [1, X], exact
  for (std::size_t k = 0; k < K; ++k) {
    int n = nlist[k];
    double sign = (n % 2) ? -1.0 : 1.0;
    out.values[k] -= a * sign * integral_power_exp_riesz(n, s - 1.0, U, U, r);
  }

  // computable boundary term of the [X, oo) integration by parts (the damped
  // weight kills it for r >= 1)
  if (r == 0) {
    double H = sys.dN.cumulative(X) - a * X;
    Complex xms = std::exp(Complex(-sigma * U, -s.imag() * U));
    for (std::size_t k = 0; k < K; ++k) {
      int n = nlist[k];
      double p = 1;
      for (int q = 0; q < n; ++q) p *= -U;
      out.values[k] -= p * xms * H;
    }
  }
  return out;
}

ZetaValue g_derivative(const GeneralizedNumberSystem& sys, double a, int n, Complex s,
                       double X, const TailModel& tm, int riesz_order) {
  GDerivMulti m = g_derivative_multi(sys, a, {n}, s, X, tm, riesz_order);
  return {m.values[0], m.errors[0]};
}

ZetaValue g_function(const GeneralizedNumberSystem& sys, double a, Complex s, double X,
                     const TailModel& tm, int riesz_order) {
  return g_derivative(sys, a, 0, s, X, tm, riesz_order);
}

// ---------------------------------------------------------------------------
// zeta evaluations
// ---------------------------------------------------------------------------

ZetaValue zeta_dirichlet(const GeneralizedNumberSystem& sys, Complex s, double X,
                         const TailModel& tail, bool remainder_path) {
  if (remainder_path) {
    if (!sys.density_a) throw DivergenceError("remainder path needs a known density");
    if (std::abs(s - Complex{1, 0}) < 1e-14)
      throw DivergenceError("zeta has its pole at s = 1");
    ZetaValue g = g_function(sys, *sys.density_a, s, X, tail);
    g.value += *sys.density_a / (s - 1.0);
    return g;
  }
  if (s.real() <= 1.0)
    throw DivergenceError("Dirichlet integral diverges for Re s <= 1 without the "
                          "remainder path");
  IntegralResult r = stieltjes_integral_to_inf({s, 0}, sys.dN, X, tail);
  return {r.value, r.total_error() + sys.dN_construction_error * std::abs(s) / s.real()};
}

ZetaValue zeta_dirichlet(const GeneralizedNumberSystem& sys, Complex s, double X) {
  if (sys.density_a && sys.n_remainder_bound && !sys.n_remainder_bound->cesaro_sense)
    return zeta_dirichlet(sys, s, X, *sys.n_remainder_bound, true);
  return zeta_dirichlet(sys, s, X, require_model(sys.n_cum_bound, "N growth"), false);
}

ZetaValue zeta_euler(const GeneralizedNumberSystem& sys, Complex s, double X) {
  if (s.real() <= 1.0) throw DivergenceError("Euler product diverges for Re s <= 1");
  if (!sys.primes) throw SpecError("Euler product needs a discrete prime list");
  const double sigma = s.real();
  Complex logzeta{0, 0};
  double abs_acc = 0;
  std::size_t used = 0;
  for (double p : *sys.primes) {
    if (!sys.primes_complete && p > X) break;
    Complex term = -std::log(1.0 - std::exp(Complex(-sigma, -s.imag()) * std::log(p)));
    logzeta += term;
    abs_acc += std::abs(term);
    ++used;
  }
  double tail = abs_acc * double(used) * 2.3e-16;  // summation rounding
  if (!sys.primes_complete) {
    // sum_{p > X} sum_j p^{-j sigma}/j <= (1 - X^{-sigma})^{-1} int_X^oo x^{-sigma} dpi
    const TailModel& tm = require_model(sys.pi_cum_bound, "prime growth");
    tail += unsigned_tail_bound(0, sigma, X, tm) / (1.0 - std::pow(X, -sigma));
  }
  Complex value = std::exp(logzeta);
  return {value, std::abs(value) * std::expm1(tail)};
}

ZetaValue zeta_exp_pi(const GeneralizedNumberSystem& sys, Complex s, double X) {
  if (s.real() <= 1.0)
    throw DivergenceError("prime-power integral diverges for Re s <= 1");
  IntegralResult r =
      stieltjes_integral_to_inf({s, 0}, sys.dPi, X,
                                require_model(sys.pi_cum_bound, "Pi growth"));
  Complex value = std::exp(r.value);
  return {value, std::abs(value) * std::expm1(r.total_error())};
}

ZetaValue zeta_boundary(const GeneralizedNumberSystem& sys, Complex s, double X) {
  // a pointwise remainder model gives the sharpest bounds at every sigma >= 1
  if (sys.density_a && sys.n_remainder_bound && !sys.n_remainder_bound->cesaro_sense)
    return zeta_dirichlet(sys, s, X, *sys.n_remainder_bound, true);
  if (s.real() > 1.0 + 1e-12) {
    if (sys.primes) return zeta_euler(sys, s, X);
    if (sys.dN.density() && sys.pi_cum_bound) return zeta_exp_pi(sys, s, X);
    return zeta_dirichlet(sys, s, X);
  }
  if (sys.density_a && sys.n_remainder_bound)
    return zeta_dirichlet(sys, s, X, *sys.n_remainder_bound, true);
  throw DivergenceError("no boundary route available for system '" + sys.label + "'");
}

// ---------------------------------------------------------------------------
// G1 through the prime-side remainder integral
// ---------------------------------------------------------------------------

namespace {

// T1(U) = sum_{k>=1} U^k / (k k!), the distribution function of (e^u - 1)/u.
double t1_series(double U) {
  double sum = 0;
  double term = 1;  // U^k / k!
  for (int k = 1; k <= 400; ++k) {
    term *= U / k;
    double add = term / k;
    sum += add;
    if (add < 1e-17 * sum && k > 4) break;
  }
  return sum;
}

}  // namespace

ZetaValue g1_function(const GeneralizedNumberSystem& sys, Complex s, double X) {
  const double sigma = s.real();
  if (sigma < 1.0 - 1e-12) throw DivergenceError("G1 needs Re s >= 1");
  if (!(X > 3) || X > sys.x_max * (1 + 1e-9))
    throw RangeError("G1 cutoff outside materialized range");
  const TailModel& tm = require_model(sys.pi_remainder_bound, "Pi - Li remainder");
  const double U = std::log(X);

  IntegralResult prime_part = stieltjes_integral({s, 0}, sys.dPi, X);

  // smooth subtraction: int_0^U e^{-su} (e^u - 1)/u du by composite Simpson,
  // with the panel width tied to the oscillation wavelength
  double panel = std::min(U / 2048, 0.3 / std::max(1.0, std::abs(s.imag())));
  std::size_t panels = std::size_t(std::ceil(U / panel));
  auto f = [&](double u) -> Complex {
    if (u < 1e-12) return {1.0, 0.0};
    return (std::exp((1.0 - s) * u) - std::exp(-s * u)) / u;
  };
  Complex smooth{0, 0};
  double h = U / double(panels);
  Complex fa = f(0);
  for (std::size_t i = 0; i < panels; ++i) {
    double u0 = h * double(i);
    Complex fm = f(u0 + 0.5 * h);
    Complex fb = f(u0 + h);
    smooth += (h / 6.0) * (fa + 4.0 * fm + fb);
    fa = fb;
  }

  // computable boundary term of the tail integration by parts
  double R = sys.dPi.cumulative(X) - t1_series(U);
  Complex boundary = -std::exp(-s * U) * R;

  double tail = signed_tail_bound(0, s, X, tm) +
                std::abs(s) * std::pow(X, -sigma) * (std::log(U) + 0.5) * 1.2;
  double quad = prime_part.quad_error + 1e-12 * (1.0 + std::abs(smooth)) +
                std::pow(h, 4) * U * std::abs(s) * 0.05;
  return {prime_part.value - smooth + boundary, tail + quad};
}

// ---------------------------------------------------------------------------
// three-four-one inequality
// ---------------------------------------------------------------------------

Ineq341Report inequality_341(const GeneralizedNumberSystem& sys, double eta, double t,
                             double X) {
  if (!(eta > 1)) throw ParameterError("inequality_341 needs eta > 1");
  ZetaValue z1 = zeta_boundary(sys, {eta, 0}, X);
  ZetaValue z2 = zeta_boundary(sys, {eta, t}, X);
  ZetaValue z3 = zeta_boundary(sys, {eta, 2 * t}, X);
  auto rel = [](const ZetaValue& z) {
    double m = std::abs(z.value);
    return m > 0 ? z.error_bound / m : std::numeric_limits<double>::infinity();
  };
  Ineq341Report rep;
  rep.eta = eta;
  rep.t = t;
  rep.product = std::pow(std::abs(z1.value), 3) * std::pow(std::abs(z2.value), 4) *
                std::abs(z3.value);
  double blow = std::pow(1 + rel(z1), 3) * std::pow(1 + rel(z2), 4) * (1 + rel(z3)) - 1;
  rep.error_bound = rep.product * blow;
  rep.margin = rep.product - (1.0 - rep.error_bound);
  rep.violated = rep.product < 1.0 - rep.error_bound;
  return rep;
}

// ---------------------------------------------------------------------------
// scans and growth-exponent fits
// ---------------------------------------------------------------------------

std::pair<double, double> fit_growth_exponent(const std::vector<double>& t,
                                              const std::vector<double>& modulus) {
  if (t.size() < 8) throw FitError("growth fit needs at least 8 samples");
  double tmin = *std::min_element(t.begin(), t.end());
  double tmax = *std::max_element(t.begin(), t.end());
  if (!(tmin > 0) || tmax / tmin < 99.0)
    throw FitError("growth fit needs a t-grid spanning two decades");
  std::vector<double> lx(t.size()), ly(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    lx[i] = std::log(t[i]);
    ly[i] = std::log(std::max(modulus[i], 1e-300));
  }
  LinearFit fit = linear_fit(lx, ly);
  if (!std::isfinite(fit.slope)) throw FitError("growth fit produced a non-finite slope");
  return {fit.slope, fit.rms};
}

void fit_growth_exponent(BoundaryScan& scan) {
  auto [slope, rms] = fit_growth_exponent(scan.t, scan.modulus);
  scan.beta_hat = slope;
  scan.residual = rms;
}

std::vector<BoundaryScan> g_derivative_scans(const GeneralizedNumberSystem& sys, double a,
                                             const std::vector<int>& nlist, double sigma,
                                             const std::vector<double>& t_grid, double X,
                                             const TailModel& tm, int riesz_order) {
  std::vector<BoundaryScan> scans(nlist.size());
  for (std::size_t k = 0; k < nlist.size(); ++k) {
    scans[k].sigma = sigma;
    scans[k].n = nlist[k];
    scans[k].riesz_order = riesz_order;
    scans[k].t = t_grid;
    scans[k].values.resize(t_grid.size());
    scans[k].modulus.resize(t_grid.size());
    scans[k].error_bound.resize(t_grid.size());
  }
  parallel_for(t_grid.size(), [&](std::size_t i) {
    GDerivMulti m =
        g_derivative_multi(sys, a, nlist, {sigma, t_grid[i]}, X, tm, riesz_order);
    for (std::size_t k = 0; k < nlist.size(); ++k) {
      scans[k].values[i] = m.values[k];
      scans[k].modulus[i] = std::abs(m.values[k]);
      scans[k].error_bound[i] = m.errors[k];
    }
  });
  for (auto& s : scans) fit_growth_exponent(s);
  return scans;
}

BoundaryScan g_derivative_scan(const GeneralizedNumberSystem& sys, double a, int n,
                               double sigma, const std::vector<double>& t_grid, double X,
                               const TailModel& tm, int riesz_order) {
  return g_derivative_scans(sys, a, {n}, sigma, t_grid, X, tm, riesz_order)[0];
}

BoundaryScan inverse_zeta_scan(const GeneralizedNumberSystem& sys, double sigma,
                               const std::vector<double>& t_grid, double X) {
  BoundaryScan scan;
  scan.sigma = sigma;
  scan.t = t_grid;
  scan.values.resize(t_grid.size());
  scan.modulus.resize(t_grid.size());
  scan.error_bound.resize(t_grid.size());
  std::vector<char> flags(t_grid.size(), 0);
  parallel_for(t_grid.size(), [&](std::size_t i) {
    ZetaValue z = zeta_boundary(sys, {sigma, t_grid[i]}, X);
    double m = std::abs(z.value);
    if (m <= z.error_bound) {
      flags[i] = 1;
      scan.values[i] = 0;
      scan.modulus[i] = 0;
      scan.error_bound[i] = std::numeric_limits<double>::infinity();
      return;
    }
    scan.values[i] = 1.0 / z.value;
    scan.modulus[i] = 1.0 / m;
    scan.error_bound[i] = z.error_bound / (m * (m - z.error_bound));
  });
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i]) scan.potential_zero.push_back(i);
  // the slope fit needs two decades; shorter scans still report moduli/flags
  double tmin = *std::min_element(t_grid.begin(), t_grid.end());
  double tmax = *std::max_element(t_grid.begin(), t_grid.end());
  if (scan.potential_zero.empty() && t_grid.size() >= 8 && tmax / tmin >= 99.0)
    fit_growth_exponent(scan);
  return scan;
}

GrowthDiagnostics growth_diagnostics(const std::vector<BoundaryScan>& scans) {
  GrowthDiagnostics diag;
  if (scans.empty()) return diag;
  double tmax = 0;
  std::vector<double> peak;
  for (const BoundaryScan& s : scans) {
    diag.beta_hats.push_back(s.beta_hat);
    double m = 0;
    for (double v : s.modulus) m = std::max(m, v);
    peak.push_back(std::max(m, 1e-12));
    if (!s.t.empty()) tmax = std::max(tmax, s.t.back());
  }
  diag.log_allowance = std::max(2.0, std::log(std::max(tmax, 1.0)));
  // consecutive-order peak ratios are invariant under any common damping
  for (std::size_t i = 1; i < peak.size(); ++i)
    diag.amplification = std::max(diag.amplification, peak[i] / peak[i - 1]);
  return diag;
}

GrowthClass classify_growth(const GrowthDiagnostics& diag, double threshold) {
  if (diag.beta_hats.empty()) return GrowthClass::neither;
  double mx = *std::max_element(diag.beta_hats.begin(), diag.beta_hats.end());
  if (mx <= threshold) return GrowthClass::o_c_like;
  if (diag.amplification <= 0) return GrowthClass::neither;
  if (diag.amplification <= diag.log_allowance) return GrowthClass::o_c_like;
  if (diag.amplification > 1.5 * diag.log_allowance) return GrowthClass::o_m_like;
  return GrowthClass::neither;
}

const char* to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::o_c_like: return "O_C-like";
    case GrowthClass::o_m_like: return "O_M-like";
    default: return "neither";
  }
}

}  // namespace beurling
