#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <thread>
#include <utility>
#include <vector>

#include "beurling/errors.hpp"

namespace beurling {

using Complex = std::complex<double>;

// I(q, z, v) = integral of u^q e^{-z u} du over [0, v], q >= 0.
// Series branch for small |z| v (the closed form cancels there), explicit
// closed form otherwise.
Complex integral_power_exp(int q, Complex z, double v);

// Integral of u^q e^{-z u} (1 - u/U)^r du over [0, min(v,U)], expanded
// binomially into integral_power_exp terms. r = 0 falls back to the plain
// integral with no U dependence.
Complex integral_power_exp_riesz(int q, Complex z, double v, double U, int r);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double rms = 0;  // root mean square residual
};

// Least squares y ~ intercept + slope * x. Throws FitError for < 2 points or
// a degenerate abscissa spread.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48);

// Number of worker threads: BEURLING_LAB_THREADS env var, else hardware value.
unsigned worker_threads();

// Evaluates fn(i) for i in [0, n) on the worker pool. fn must be pure apart
// from writes to distinct slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Shortest round-trip decimal formatting (%.17g); used everywhere output must
// be byte-reproducible.
std::string format_double(double v);

// count logarithmically spaced values covering [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, std::size_t count);

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace beurling
