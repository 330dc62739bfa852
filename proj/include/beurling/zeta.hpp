#pragma once

#include <utility>
#include <vector>

#include "beurling/measure.hpp"
#include "beurling/semigroup.hpp"

namespace beurling {

struct ZetaValue {
  Complex value{0, 0};
  double error_bound = 0;
};

// zeta(s) = int_{1^-}^oo x^{-s} dN. The remainder route (available once the
// system has a density a and an |N - ax| model) subtracts the drift a dx on
// [1, X] in closed form and is valid up to Re s = 1; the direct route needs
// Re s > 1 and an N growth model.
ZetaValue zeta_dirichlet(const GeneralizedNumberSystem& sys, Complex s, double X);
ZetaValue zeta_dirichlet(const GeneralizedNumberSystem& sys, Complex s, double X,
                         const TailModel& tail, bool remainder_path);

// Euler product over the materialized primes; complete finite lists carry no
// tail at all. Re s > 1.
ZetaValue zeta_euler(const GeneralizedNumberSystem& sys, Complex s, double X);

// exp of the truncated prime-power integral. Re s > 1.
ZetaValue zeta_exp_pi(const GeneralizedNumberSystem& sys, Complex s, double X);

// G(s) = zeta(s) - a/(s-1) and its s-derivatives, evaluated through the
// signed remainder integral int x^{-s} d(N - ax); never touches the divergent
// series, so it extends to Re s = 1. Derivatives differentiate the kernel
// exactly: (-log x)^n x^{-s}. riesz_order > 0 damps the truncation with the
// weight (1 - log x / log X)^r, which is what a Cesaro-sense remainder model
// requires.
ZetaValue g_function(const GeneralizedNumberSystem& sys, double a, Complex s, double X,
                     const TailModel& tm, int riesz_order = 0);
ZetaValue g_derivative(const GeneralizedNumberSystem& sys, double a, int n, Complex s,
                       double X, const TailModel& tm, int riesz_order = 0);

// Shared-pass evaluation of several derivative orders at one s.
struct GDerivMulti {
  std::vector<Complex> values;
  std::vector<double> errors;
};
GDerivMulti g_derivative_multi(const GeneralizedNumberSystem& sys, double a,
                               const std::vector<int>& nlist, Complex s, double X,
                               const TailModel& tm, int riesz_order);

// G1(s) = log zeta(s) - log s + log(s-1), evaluated as the prime-side
// remainder integral int e^{-su}(dS1 - dT1) with dT1 = (e^u - 1)/u du, so no
// branch bookkeeping is ever needed. Valid on Re s >= 1 given a Pi - Li
// remainder model.
ZetaValue g1_function(const GeneralizedNumberSystem& sys, Complex s, double X);

struct Ineq341Report {
  double eta = 0;
  double t = 0;
  double product = 0;      // |zeta^3(eta) zeta^4(eta+it) zeta(eta+2it)|
  double error_bound = 0;  // accumulated declared bound on the product
  double margin = 0;       // product - (1 - error_bound)
  bool violated = false;   // product < 1 - error_bound
};

// Hadamard three-four-one check with matched truncations.
Ineq341Report inequality_341(const GeneralizedNumberSystem& sys, double eta, double t,
                             double X);

struct BoundaryScan {
  double sigma = 1;
  int n = 0;
  int riesz_order = 0;
  std::vector<double> t;
  std::vector<Complex> values;
  std::vector<double> modulus;
  std::vector<double> error_bound;
  double beta_hat = 0;
  double residual = 0;
  std::vector<std::size_t> potential_zero;  // inverse scans: |zeta| below its error bar
};

// Least-squares slope of log modulus against log t. Needs >= 8 samples over
// >= 2 decades.
std::pair<double, double> fit_growth_exponent(const std::vector<double>& t,
                                              const std::vector<double>& modulus);
void fit_growth_exponent(BoundaryScan& scan);

// |G^(n)(sigma + it)| over a t grid (data-parallel).
BoundaryScan g_derivative_scan(const GeneralizedNumberSystem& sys, double a, int n,
                               double sigma, const std::vector<double>& t_grid, double X,
                               const TailModel& tm, int riesz_order = 0);

std::vector<BoundaryScan> g_derivative_scans(const GeneralizedNumberSystem& sys, double a,
                                             const std::vector<int>& nlist, double sigma,
                                             const std::vector<double>& t_grid, double X,
                                             const TailModel& tm, int riesz_order = 0);

// Samples |1/zeta(sigma + it)|; flags any sample whose zeta modulus is not
// separated from zero by its declared error.
BoundaryScan inverse_zeta_scan(const GeneralizedNumberSystem& sys, double sigma,
                               const std::vector<double>& t_grid, double X);

// zeta through the best route for the given sigma (remainder at the boundary,
// Euler for discrete systems off it, exp-integral for continuous ones).
ZetaValue zeta_boundary(const GeneralizedNumberSystem& sys, Complex s, double X);

enum class GrowthClass { o_c_like, o_m_like, neither };

// Desk-scale growth classification. Fitted slopes alone cannot tell log-power
// envelopes from genuine t-powers over two decades, so the discriminant is
// modulus amplification across derivative orders: each s-derivative may gain
// at most one log t factor under a single-epsilon bound, while order-dependent
// power growth gains t-powers.
struct GrowthDiagnostics {
  std::vector<double> beta_hats;
  double amplification = 0;  // max over orders of peak-modulus ratio M_{n+1}/M_n
  double log_allowance = 0;  // log t_max, floored at 2
};

GrowthDiagnostics growth_diagnostics(const std::vector<BoundaryScan>& scans);

// O_C-like: every fitted exponent under the threshold, or per-order
// amplification within the log allowance. O_M-like: amplification beyond
// 1.5x the allowance. neither: the gray band or degenerate input.
GrowthClass classify_growth(const GrowthDiagnostics& diag, double threshold);

const char* to_string(GrowthClass c);

}  // namespace beurling
