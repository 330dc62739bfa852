#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "beurling/errors.hpp"
#include "beurling/numeric.hpp"

namespace beurling {

struct Atom {
  double x;
  double mass;
};

// Uniform grid in u = log x. Bin i carries the total mass of [u0 + i*du,
// u0 + (i+1)*du); within a bin the mass is treated as uniformly spread in u.
struct DensityBins {
  double u0 = 0;
  double du = 0;
  std::vector<double> mass;
};

// Two abscissas are the same point of the measure when their logs agree to
// this relative tolerance. All boundary comparisons (merging, cumulative
// queries) use it, so counting queries like cum(2^25) are stable against the
// rounding of re-exponentiated products.
inline constexpr double kTieEps = 1e-12;

bool log_close(double x1, double x2);

// A (possibly signed) measure on [1, oo): sorted atoms plus an optional
// binned density part. Immutable after construction; cheap to share.
class HalfLineMeasure {
 public:
  HalfLineMeasure() = default;

  // Sorts, merges abscissas equal under the tie tolerance, drops zero-mass
  // atoms. Throws DomainError for abscissas < 1 and SignError for negative
  // mass when is_signed is false.
  static HalfLineMeasure from_points(std::vector<Atom> points, bool is_signed);

  static HalfLineMeasure delta_at_one() { return from_points({{1.0, 1.0}}, false); }

  static HalfLineMeasure with_density(std::vector<Atom> points, DensityBins bins,
                                      bool is_signed);

  // Right-continuous cumulative mass of [1, x]; 0 for x < 1. Atoms whose
  // abscissa ties with x are included.
  double cumulative(double x) const;

  double total_mass() const;
  double support_max() const;

  // Restriction to [1, x_max] (atoms and whole bins above x_max dropped).
  HalfLineMeasure restricted(double x_max) const;

  const std::vector<double>& atom_x() const { return xs_; }
  const std::vector<double>& atom_mass() const { return ms_; }
  std::size_t atom_count() const { return xs_.size(); }
  const std::optional<DensityBins>& density() const { return bins_; }
  bool is_signed() const { return signed_; }
  bool empty() const { return xs_.empty() && !bins_; }

  void dump_csv(std::ostream& out) const;
  static HalfLineMeasure load_csv(std::istream& in);

 private:
  std::vector<double> xs_;
  std::vector<double> ms_;
  std::vector<double> prefix_;  // prefix_[i] = sum of ms_[0..i]
  std::optional<DensityBins> bins_;
  std::vector<double> bin_prefix_;
  bool signed_ = false;

  void finalize();
};

// Declared growth model: the relevant cumulative function is bounded by
// C x / log^gamma x on [X, oo) for the X at hand. `cesaro_sense` marks bounds
// that hold for Riesz-averaged remainders only; evaluations relying on such a
// model must damp their truncation accordingly.
struct TailModel {
  double C = 0;
  double gamma = 0;
  bool cesaro_sense = false;
};

// Integration kernel x -> (-log x)^n x^{-s}.
struct Kernel {
  Complex s;
  int log_power = 0;
};

struct IntegralResult {
  Complex value{0, 0};
  double quad_error = 0;  // density-part bound (mass may sit anywhere in its bin)
  double tail_bound = 0;  // declared bound for the [X, oo) tail
  double total_error() const { return quad_error + tail_bound; }
};

// Exact atom summation plus per-bin closed forms for the density part, over
// [1, upper]. The recorded quad_error bounds the effect of the unknown in-bin
// mass arrangement.
IntegralResult stieltjes_integral(const Kernel& k, const HalfLineMeasure& mu, double upper);

// As above to x = X, plus a declared tail bound for [X, oo) from the growth
// model of the cumulative (unsigned measures: only Re s enters the bound).
// Throws DivergenceError when no bound branch applies.
IntegralResult stieltjes_integral_to_inf(const Kernel& k, const HalfLineMeasure& mu,
                                         double X, const TailModel& tm);

// Declared bound for |int_X^oo (-log x)^n x^{-s} d mu| with unsigned mu,
// mu[1,x] <= C x/log^gamma x on [X, oo).
double unsigned_tail_bound(int n, double sigma, double X, const TailModel& tm);

// Declared bound for |int_X^oo (-log x)^n x^{-s} dH| for signed H with
// |H(x)| <= C x/log^gamma x, after the computable boundary term
// -(-log X)^n X^{-s} H(X) has been accounted separately. Needs gamma > n+1.
double signed_tail_bound(int n, Complex s, double X, const TailModel& tm);

struct ExpStarResult {
  HalfLineMeasure measure;
  int truncation_order = 0;
  double mass_error = 0;  // bound on the dropped series mass within [1, x_max]
};

// dN = exp*(dPi) = delta_1 + sum_k dPi^{*k} / k! truncated to [1, x_max],
// where * is multiplicative convolution. Atomic input stays atomic (exact
// products); a density part is handled on the u = log x lattice via the
// log-derivative recurrence nu_m = (1/m) sum_j j pi_j nu_{m-j}, which builds
// the same series in one O(B^2) pass.
ExpStarResult exp_star(const HalfLineMeasure& dPi, double x_max, double tol);

// A generalized number system: the integer measure dN (cum(1) = 1), the
// prime-power measure dPi (cum(1) = 0), and whatever is known about it.
struct GeneralizedNumberSystem {
  HalfLineMeasure dN;
  HalfLineMeasure dPi;
  std::optional<std::vector<double>> primes;  // sorted, > 1
  bool primes_complete = false;               // the whole sequence, not a prefix
  std::optional<double> density_a;
  std::string label;
  double x_max = 1;  // materialized range

  // Desk-scale validated growth declarations, all on [x_max, oo):
  std::optional<TailModel> n_cum_bound;        // N(x) bound
  std::optional<TailModel> pi_cum_bound;       // Pi(x) bound
  std::optional<TailModel> n_remainder_bound;  // |N(x) - a x| bound
  std::optional<TailModel> pi_remainder_bound; // |Pi(x) - Li(x)| bound

  // sup_x |cum error| of a binned dN against grid refinement; 0 for exact
  // atomic constructions.
  double dN_construction_error = 0;

  // Optional closed-form comparators attached by the gallery.
  std::function<double(double)> exact_N;
  std::function<double(double)> exact_pi;
  // exact_N is floor-like (unit jumps at integers); enables evaluations past
  // the materialized range.
  bool exact_N_integer_steps = false;

  // Throws SpecError when the normalization or monotone structure is broken.
  void validate() const;
};

}  // namespace beurling
