#include "beurling/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace beurling {

// ---------------------------------------------------------------------------
// numeric utilities (declared in numeric.hpp)
// ---------------------------------------------------------------------------

Complex integral_power_exp(int q, Complex z, double v) {
  if (v <= 0) return {0, 0};
  const double az = std::abs(z) * v;
  if (az <= q + 4.0) {
    // v^{q+1} sum_m (-z v)^m / (m! (q+m+1))
    Complex sum{0, 0};
    Complex term{1, 0};  // (-z v)^m / m!
    for (int m = 0;; ++m) {
      Complex add = term / double(q + m + 1);
      sum += add;
      if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300) && m > 2) break;
      if (m > 200) break;
      term *= (-z) * v / double(m + 1);
    }
    return std::pow(v, q + 1) * sum;
  }
  // q!/z^{q+1} - e^{-zv} sum_{k<=q} (q!/k!) v^k / z^{q+1-k}
  // evaluated as (q! - e^{-zv} sum_k (q!/k!)(z v)^k) / z^{q+1}
  double qfact = 1;
  for (int k = 2; k <= q; ++k) qfact *= k;
  Complex zv = z * v;
  Complex sum{0, 0};
  double coef = qfact;  // q!/k!
  Complex zvk{1, 0};    // (z v)^k
  for (int k = 0; k <= q; ++k) {
    sum += coef * zvk;
    zvk *= zv;
    coef /= double(k + 1);
  }
  Complex num = qfact - std::exp(-zv) * sum;
  return num / std::pow(z, q + 1);
}

Complex integral_power_exp_riesz(int q, Complex z, double v, double U, int r) {
  if (r == 0) return integral_power_exp(q, z, v);
  double upper = std::min(v, U);
  Complex total{0, 0};
  double binom = 1;  // C(r, k)
  double sign = 1;
  for (int k = 0; k <= r; ++k) {
    total += sign * binom * std::pow(U, -k) * integral_power_exp(q + k, z, upper);
    binom = binom * (r - k) / double(k + 1);
    sign = -sign;
  }
  return total;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw FitError("linear_fit: need at least two samples");
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0) throw FitError("linear_fit: degenerate abscissas");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - fit.intercept - fit.slope * x[i];
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b,
               double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double fa,
                            double b, double fb, double fm, double whole, double tol,
                            int depth, int force_depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, fa, m, fm, flm);
  double right = simpson(f, m, fm, b, fb, frm);
  double delta = left + right - whole;
  // the forced splits guard against sampling traps (integrands vanishing on a
  // periodic lattice)
  if (force_depth <= 0 && (depth <= 0 || std::abs(delta) <= 15.0 * tol))
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, flm, left, tol / 2, depth - 1,
                              force_depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, frm, right, tol / 2, depth - 1,
                              force_depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  if (!(b > a)) return 0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = simpson(f, a, fa, b, fb, fm);
  return adaptive_simpson_rec(f, a, fa, b, fb, fm, whole, tol, max_depth, 8);
}

unsigned worker_threads() {
  if (const char* env = std::getenv("BEURLING_LAB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return unsigned(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned workers = worker_threads();
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  workers = std::min<std::size_t>(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
  if (!(hi > lo) || lo <= 0 || count < 2) throw ParameterError("bad geometric grid");
  std::vector<double> g(count);
  double step = std::log(hi / lo) / double(count - 1);
  for (std::size_t i = 0; i < count; ++i) g[i] = lo * std::exp(step * double(i));
  return g;
}

// ---------------------------------------------------------------------------
// HalfLineMeasure
// ---------------------------------------------------------------------------

bool log_close(double x1, double x2) {
  double l1 = std::log(x1), l2 = std::log(x2);
  return std::abs(l1 - l2) <= kTieEps * std::max(1.0, std::abs(l1));
}

namespace {

// Multiplicative slack factor realizing the log-space tie tolerance at x.
double upper_with_slack(double x) {
  double lx = std::abs(std::log(std::max(x, 1e-300)));
  return x * std::exp(kTieEps * std::max(1.0, lx));
}

}  // namespace

void HalfLineMeasure::finalize() {
  prefix_.resize(xs_.size());
  double run = 0;
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    run += ms_[i];
    prefix_[i] = run;
  }
  if (bins_) {
    bin_prefix_.resize(bins_->mass.size());
    run = 0;
    for (std::size_t i = 0; i < bins_->mass.size(); ++i) {
      run += bins_->mass[i];
      bin_prefix_[i] = run;
    }
  } else {
    bin_prefix_.clear();
  }
}

HalfLineMeasure HalfLineMeasure::from_points(std::vector<Atom> points, bool is_signed) {
  for (const Atom& a : points) {
    if (!(a.x >= 1.0) && !log_close(a.x, 1.0))
      throw DomainError("measure atom below 1: x = " + format_double(a.x));
    if (!is_signed && a.mass < 0)
      throw SignError("negative mass in unsigned measure at x = " + format_double(a.x));
    if (!std::isfinite(a.x) || !std::isfinite(a.mass))
      throw DomainError("non-finite atom");
  }
  std::sort(points.begin(), points.end(),
            [](const Atom& a, const Atom& b) { return a.x < b.x; });
  HalfLineMeasure mu;
  mu.signed_ = is_signed;
  for (const Atom& a : points) {
    if (!mu.xs_.empty() && log_close(mu.xs_.back(), a.x)) {
      mu.ms_.back() += a.mass;
    } else {
      mu.xs_.push_back(std::max(a.x, 1.0));
      mu.ms_.push_back(a.mass);
    }
  }
  // drop zero-mass atoms (exact cancellations)
  std::size_t w = 0;
  for (std::size_t i = 0; i < mu.xs_.size(); ++i) {
    if (mu.ms_[i] != 0.0) {
      mu.xs_[w] = mu.xs_[i];
      mu.ms_[w] = mu.ms_[i];
      ++w;
    }
  }
  mu.xs_.resize(w);
  mu.ms_.resize(w);
  mu.finalize();
  return mu;
}

HalfLineMeasure HalfLineMeasure::with_density(std::vector<Atom> points, DensityBins bins,
                                              bool is_signed) {
  HalfLineMeasure mu = from_points(std::move(points), is_signed);
  if (bins.du <= 0 || bins.u0 < -1e-12)
    throw ParameterError("density bins need du > 0 and u0 >= 0");
  if (!is_signed) {
    for (double m : bins.mass)
      if (m < 0) throw SignError("negative bin mass in unsigned measure");
  }
  mu.bins_ = std::move(bins);
  mu.finalize();
  return mu;
}

double HalfLineMeasure::cumulative(double x) const {
  if (x < 1.0 && !log_close(x, 1.0)) return 0;
  double total = 0;
  if (!xs_.empty()) {
    double bound = upper_with_slack(x);
    auto it = std::upper_bound(xs_.begin(), xs_.end(), bound);
    if (it != xs_.begin()) total += prefix_[std::size_t(it - xs_.begin()) - 1];
  }
  if (bins_) {
    double u = std::log(std::max(x, 1.0));
    double pos = (u - bins_->u0) / bins_->du;
    if (pos > 0) {
      std::size_t full = std::min<std::size_t>(std::size_t(pos), bins_->mass.size());
      if (full > 0) total += bin_prefix_[full - 1];
      if (full < bins_->mass.size()) {
        double frac = pos - double(full);
        total += bins_->mass[full] * std::clamp(frac, 0.0, 1.0);
      }
    }
  }
  return total;
}

double HalfLineMeasure::total_mass() const {
  double total = xs_.empty() ? 0 : prefix_.back();
  if (bins_ && !bin_prefix_.empty()) total += bin_prefix_.back();
  return total;
}

double HalfLineMeasure::support_max() const {
  double top = 1.0;
  if (!xs_.empty()) top = std::max(top, xs_.back());
  if (bins_) top = std::max(top, std::exp(bins_->u0 + bins_->du * bins_->mass.size()));
  return top;
}

HalfLineMeasure HalfLineMeasure::restricted(double x_max) const {
  std::vector<Atom> pts;
  double bound = upper_with_slack(x_max);
  for (std::size_t i = 0; i < xs_.size(); ++i)
    if (xs_[i] <= bound) pts.push_back({xs_[i], ms_[i]});
  if (!bins_) return from_points(std::move(pts), signed_);
  DensityBins nb;
  nb.u0 = bins_->u0;
  nb.du = bins_->du;
  double umax = std::log(x_max);
  std::size_t keep = 0;
  for (std::size_t i = 0; i < bins_->mass.size(); ++i)
    if (bins_->u0 + (i + 1) * bins_->du <= umax + kTieEps * std::max(1.0, umax)) keep = i + 1;
  nb.mass.assign(bins_->mass.begin(), bins_->mass.begin() + keep);
  if (nb.mass.empty()) return from_points(std::move(pts), signed_);
  return with_density(std::move(pts), std::move(nb), signed_);
}

// ---------------------------------------------------------------------------
// Stieltjes integration
// ---------------------------------------------------------------------------

namespace {

Complex kernel_eval(const Kernel& k, double x) {
  double lx = std::log(x);
  double p = 1;
  for (int i = 0; i < k.log_power; ++i) p *= -lx;
  return p * std::exp(Complex(-k.s.real() * lx, -k.s.imag() * lx));
}

// |d/du of u^n e^{-s u}| <= (n u^{n-1} + |s| u^n) e^{-sigma u}; used for the
// in-bin mass arrangement bound.
double kernel_log_derivative_bound(const Kernel& k, double u) {
  double sig = k.s.real();
  double as = std::abs(k.s);
  double un = std::pow(u, k.log_power);
  double un1 = k.log_power > 0 ? k.log_power * std::pow(u, k.log_power - 1) : 0;
  return (un1 + as * un) * std::exp(-sig * u);
}

}  // namespace

IntegralResult stieltjes_integral(const Kernel& k, const HalfLineMeasure& mu, double upper) {
  IntegralResult res;
  if (upper < 1.0) return res;
  const auto& xs = mu.atom_x();
  const auto& ms = mu.atom_mass();
  double bound = upper_with_slack(upper);
  Complex acc{0, 0};
  double abs_acc = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < xs.size() && xs[i] <= bound; ++i) {
    Complex term = ms[i] * kernel_eval(k, xs[i]);
    acc += term;
    abs_acc += std::abs(term);
    ++used;
  }
  // worst-case rounding of the plain summation
  res.quad_error += abs_acc * double(used) * 2.3e-16;
  if (mu.density()) {
    const DensityBins& b = *mu.density();
    double utop = std::log(upper);
    Complex z = k.s;  // integral over u of (-u)^n e^{-s u} (mass/du) du
    for (std::size_t i = 0; i < b.mass.size(); ++i) {
      double ua = b.u0 + i * b.du;
      double ub = ua + b.du;
      if (ua >= utop) break;
      double cut = std::min(ub, utop);
      double covered = (cut - ua) / b.du;
      double m = b.mass[i] * covered;
      if (m == 0) continue;
      double sign = (k.log_power % 2) ? -1.0 : 1.0;
      Complex seg = integral_power_exp(k.log_power, z, cut) -
                    integral_power_exp(k.log_power, z, ua);
      acc += sign * (m / (cut - ua)) * seg;
      // mass could sit anywhere within the covered stretch
      double kmax = std::max(kernel_log_derivative_bound(k, ua),
                             kernel_log_derivative_bound(k, cut));
      res.quad_error += std::abs(m) * kmax * (cut - ua) * 0.5;
    }
  }
  res.value = acc;
  return res;
}

double unsigned_tail_bound(int n, double sigma, double X, const TailModel& tm) {
  if (tm.C == 0) return 0;
  if (X <= 3) throw DivergenceError("tail bound needs X > 3");
  const double L = std::log(X);
  double best = -1;
  // sigma > 1 branch, needs gamma >= n so the log factor is monotone
  if (sigma > 1 && tm.gamma >= n) {
    double b = tm.C * std::pow(X, 1 - sigma) * std::pow(L, n - tm.gamma) *
               (1 + (n / L + sigma) / (sigma - 1));
    best = best < 0 ? b : std::min(best, b);
  }
  // boundary-safe branch, needs gamma > n+1
  if (sigma >= 1 && tm.gamma > n + 1) {
    double b = tm.C * std::pow(X, 1 - sigma) * std::pow(L, n - tm.gamma) *
               (1 + n / (tm.gamma - n) + sigma * L / (tm.gamma - n - 1));
    best = best < 0 ? b : std::min(best, b);
  }
  if (best < 0)
    throw DivergenceError("no applicable tail bound: sigma = " + format_double(sigma) +
                          ", gamma = " + format_double(tm.gamma) + ", n = " + std::to_string(n));
  return best;
}

double signed_tail_bound(int n, Complex s, double X, const TailModel& tm) {
  if (tm.C == 0) return 0;
  const double sigma = s.real();
  if (sigma < 1) throw DivergenceError("signed tail bound needs Re s >= 1");
  if (!(tm.gamma > n + 1))
    throw TailTooWeakError("remainder model too weak: gamma = " + format_double(tm.gamma) +
                           " <= n + 1 = " + std::to_string(n + 1));
  const double L = std::log(X);
  return tm.C * std::pow(X, 1 - sigma) *
         (n * std::pow(L, n - tm.gamma) / (tm.gamma - n) +
          std::abs(s) * std::pow(L, n + 1 - tm.gamma) / (tm.gamma - n - 1));
}

IntegralResult stieltjes_integral_to_inf(const Kernel& k, const HalfLineMeasure& mu,
                                         double X, const TailModel& tm) {
  if (mu.is_signed())
    throw SignError("stieltjes_integral_to_inf expects an unsigned measure; "
                    "use the remainder path for signed integrands");
  IntegralResult res = stieltjes_integral(k, mu, X);
  res.tail_bound = unsigned_tail_bound(k.log_power, k.s.real(), X, tm);
  return res;
}

// ---------------------------------------------------------------------------
// exp* — the multiplicative-convolution exponential
// ---------------------------------------------------------------------------

namespace {

// One convolution step for atom lists: all pairwise products <= x_max.
std::vector<Atom> convolve_atoms(const std::vector<Atom>& a, const std::vector<Atom>& b,
                                 double x_max) {
  std::vector<Atom> out;
  double bound = upper_with_slack(x_max);
  for (const Atom& p : a) {
    for (const Atom& q : b) {
      double v = p.x * q.x;
      if (v > bound) break;  // b sorted ascending
      out.push_back({v, p.mass * q.mass});
    }
  }
  auto merged = HalfLineMeasure::from_points(std::move(out), false);
  std::vector<Atom> res(merged.atom_count());
  for (std::size_t i = 0; i < res.size(); ++i)
    res[i] = {merged.atom_x()[i], merged.atom_mass()[i]};
  return res;
}

}  // namespace

ExpStarResult exp_star(const HalfLineMeasure& dPi, double x_max, double tol) {
  if (dPi.is_signed()) throw SignError("exp_star needs an unsigned prime measure");
  if (!(tol > 0)) throw ParameterError("exp_star needs tol > 0");
  if (!(x_max >= 1)) throw DomainError("exp_star needs x_max >= 1");
  if (std::abs(dPi.cumulative(1.0)) > 1e-12)
    throw DomainError("exp_star input must have cum(1) = 0");

  HalfLineMeasure base = dPi.restricted(x_max);
  ExpStarResult out;

  if (!base.density()) {
    // atomic path: explicit series, Taylor-tail truncation rule
    const double M = base.total_mass();
    std::vector<Atom> basev(base.atom_count());
    for (std::size_t i = 0; i < basev.size(); ++i)
      basev[i] = {base.atom_x()[i], base.atom_mass()[i]};
    std::vector<Atom> acc{{1.0, 1.0}};
    std::vector<Atom> cur = basev;
    double kfact = 1;
    int k = 1;
    double taylor_term = M;  // M^k / k!
    while (!cur.empty() && taylor_term >= tol) {
      for (const Atom& a : cur) acc.push_back({a.x, a.mass / kfact});
      cur = convolve_atoms(cur, basev, x_max);
      ++k;
      kfact *= k;
      taylor_term = taylor_term * M / k;
    }
    out.truncation_order = k;
    if (cur.empty()) {
      out.mass_error = 0;  // series support exhausted: remainder vanishes on [1, x_max]
    } else {
      // sum_{j>=k} M^j/j! <= (M^k/k!) / (1 - M/(k+1)) once k+1 > M
      double geo = (k + 1 > M) ? 1.0 / (1.0 - M / (k + 1)) : std::exp(M);
      out.mass_error = taylor_term * geo;
    }
    out.measure = HalfLineMeasure::from_points(std::move(acc), false);
    return out;
  }

  // density path: u-lattice series via nu_m = (1/m) sum_j j pi_j nu_{m-j}
  const DensityBins& b = *base.density();
  const std::size_t B = b.mass.size();
  std::vector<double> pi_lattice(B, 0.0);
  for (std::size_t i = 0; i < B; ++i) pi_lattice[i] = b.mass[i];
  // sub-resolution mass in [0, du) moves right one bin; atoms fold to the
  // nearest lattice node
  if (B > 1) {
    pi_lattice[1] += pi_lattice[0];
    pi_lattice[0] = 0;
  }
  for (std::size_t i = 0; i < base.atom_count(); ++i) {
    double u = std::log(base.atom_x()[i]);
    long j = std::lround((u - b.u0) / b.du);
    j = std::clamp(j, 1l, long(B) - 1);
    pi_lattice[std::size_t(j)] += base.atom_mass()[i];
  }
  std::vector<double> nu(B, 0.0);
  nu[0] = 1.0;  // the delta_1 slot
  for (std::size_t m = 1; m < B; ++m) {
    double s = 0;
    for (std::size_t j = 1; j <= m; ++j) s += double(j) * pi_lattice[j] * nu[m - j];
    nu[m] = s / double(m);
  }
  DensityBins nb;
  nb.u0 = b.u0;
  nb.du = b.du;
  nb.mass.assign(nu.begin(), nu.end());
  nb.mass[0] = 0;  // lattice node 0 is exactly the atom at x = 1
  out.measure = HalfLineMeasure::with_density({{1.0, 1.0}}, std::move(nb), false);
  out.truncation_order = int(B);
  out.mass_error = 0;  // assessed by grid refinement at construction sites
  return out;
}

// ---------------------------------------------------------------------------
// system validation
// ---------------------------------------------------------------------------

void GeneralizedNumberSystem::validate() const {
  if (std::abs(dN.cumulative(1.0) - 1.0) > 1e-9)
    throw SpecError("system '" + label + "': N(1) != 1");
  if (std::abs(dPi.cumulative(1.0)) > 1e-9)
    throw SpecError("system '" + label + "': Pi(1) != 0");
  if (dN.is_signed() || dPi.is_signed())
    throw SpecError("system '" + label + "': counting measures must be unsigned");
  if (primes) {
    double prev = 1.0;
    for (double p : *primes) {
      if (!(p > 1.0)) throw SpecError("system '" + label + "': prime <= 1");
      if (p < prev) throw SpecError("system '" + label + "': primes not sorted");
      prev = p;
    }
  }
  // O(x^{1+eps}) sanity: cum(x)/x^{1.5} bounded on a coarse grid
  for (double x = 2; x <= x_max; x *= 4) {
    double v = dN.cumulative(x) / std::pow(x, 1.5);
    if (v > 64) throw SpecError("system '" + label + "': N grows faster than x^{1.5}");
  }
}

// ---------------------------------------------------------------------------
// CSV dump / load
// ---------------------------------------------------------------------------

void HalfLineMeasure::dump_csv(std::ostream& out) const {
  out << "# halfline-measure v1 signed=" << (signed_ ? 1 : 0) << "\n";
  for (std::size_t i = 0; i < xs_.size(); ++i)
    out << format_double(xs_[i]) << "," << format_double(ms_[i]) << "\n";
  if (bins_) {
    out << "# bins u0=" << format_double(bins_->u0) << " du=" << format_double(bins_->du)
        << "\n";
    for (double m : bins_->mass) out << format_double(m) << "\n";
  }
}

HalfLineMeasure HalfLineMeasure::load_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# halfline-measure v1", 0) != 0)
    throw ParseError("missing halfline-measure header");
  bool is_signed = line.find("signed=1") != std::string::npos;
  std::vector<Atom> pts;
  std::optional<DensityBins> bins;
  bool in_bins = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# bins", 0) == 0) {
      DensityBins b;
      auto pos_u0 = line.find("u0=");
      auto pos_du = line.find("du=");
      if (pos_u0 == std::string::npos || pos_du == std::string::npos)
        throw ParseError("malformed bins header: " + line);
      b.u0 = std::strtod(line.c_str() + pos_u0 + 3, nullptr);
      b.du = std::strtod(line.c_str() + pos_du + 3, nullptr);
      bins = std::move(b);
      in_bins = true;
      continue;
    }
    if (line[0] == '#') continue;
    if (in_bins) {
      bins->mass.push_back(std::strtod(line.c_str(), nullptr));
    } else {
      auto comma = line.find(',');
      if (comma == std::string::npos) throw ParseError("malformed atom row: " + line);
      Atom a;
      a.x = std::strtod(line.substr(0, comma).c_str(), nullptr);
      a.mass = std::strtod(line.c_str() + comma + 1, nullptr);
      pts.push_back(a);
    }
  }
  if (bins) return with_density(std::move(pts), std::move(*bins), is_signed);
  return from_points(std::move(pts), is_signed);
}

}  // namespace beurling
