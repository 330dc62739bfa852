#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "beurling/measure.hpp"

namespace beurling {

// Logarithmic integral li(x) = PV int_0^x dt/log t via the series
// gamma + log log x + sum_k log^k x / (k k!), and Li(x) = li(x) - li(2).
double li(double x);
double Li(double x);

enum class RemainderTarget { n_minus_ax, pi_minus_li };
enum class Verdict { bounded, unbounded_trend, no_density };

const char* to_string(RemainderTarget t);
const char* to_string(Verdict v);

// Pointwise remainder of the system against its main term.
double remainder_value(const GeneralizedNumberSystem& sys, RemainderTarget target,
                       double a, double x);

struct RemainderProfile {
  RemainderTarget target = RemainderTarget::n_minus_ax;
  int n = 0;
  std::optional<int> cesaro_m;  // set for Cesaro profiles
  std::vector<double> x;
  std::vector<double> raw;
  std::vector<double> normalized;  // raw * log^n x / x
  double sup_norm = 0;
  double slope = 0;  // envelope slope of log|normalized| against log log x
  Verdict verdict = Verdict::bounded;
  std::optional<double> a_used;
};

// Rows of raw and normalized remainders over the grid with the boundedness
// verdict: sup over the top half of the grid <= 1.1 x sup over the bottom
// half, or envelope slope <= 0.05. Needs >= 8 grid points. A missing density
// for the N target yields the no-density verdict.
RemainderProfile remainder_profile(const GeneralizedNumberSystem& sys,
                                   RemainderTarget target, int n,
                                   std::optional<double> a,
                                   const std::vector<double>& grid);

struct CesaroConfig {
  int m = 2;            // Riesz order; the choice is reported, never hidden
  double alpha = 0;     // target log power used for normalization (0 -> use n)
  double quad_tol = 1e-9;
};

// Riesz mean int_0^x (E(u)/u)(1 - u/x)^m du for a sampled remainder.
double cesaro_mean(const std::function<double(double)>& E, int m, double x,
                   double lower = 0, double quad_tol = 1e-10);

// Same mean for the system-backed remainder: exact interval summation over
// the measure pieces, quadrature only for the smooth main term.
double cesaro_mean_remainder(const GeneralizedNumberSystem& sys, RemainderTarget target,
                             double a, int m, double x);

RemainderProfile cesaro_remainder_profile(const GeneralizedNumberSystem& sys,
                                          RemainderTarget target, int n,
                                          const CesaroConfig& cfg,
                                          std::optional<double> a,
                                          const std::vector<double>& grid);

enum class DensityMethod { ratio_fit, g1_exp };

struct DensityEstimate {
  double a = 0;
  double discrepancy = 0;  // |ratio - g1| when both routes ran
};

// Density of the integer measure: least squares of N(x)/x over the top decade
// (with a drift test that raises NoDensityError when N/x is still moving), or
// exp of the boundary value of G1 at s = 1.
DensityEstimate estimate_density_a(const GeneralizedNumberSystem& sys, DensityMethod m,
                                   double X);

struct LaplaceCheckReport {
  Complex s{0, 0};
  Complex left{0, 0};   // int_0^{u_max} e^{-su} Delta(u) du
  Complex right{0, 0};  // (G(s+1) - a) / (s+1)
  double left_error = 0;
  double right_error = 0;
  double gap = 0;
  bool within = false;
};

// Checks the Laplace identity for Delta(u) = e^{-u}(N(e^u) - a e^u) against
// the zeta-side value. Uses the closed-form comparator when the system has an
// integer-step one, so u_max may exceed the materialized range.
LaplaceCheckReport laplace_delta_check(const GeneralizedNumberSystem& sys, double a,
                                       Complex s, double u_max);

struct VariationRow {
  double x = 0;
  double variation = 0;
  double normalized = 0;  // variation / (x / log x)
};

struct VariationReport {
  std::vector<VariationRow> rows;
  double fitted_C = 0;      // sup of normalized values
  bool bounded = false;     // reported verdict, never asserted
};

// Total variation of d(N - ax) on [1, x] against the x/log x yardstick.
VariationReport variation_bound_check(const GeneralizedNumberSystem& sys, double a,
                                      const std::vector<double>& grid);

}  // namespace beurling
