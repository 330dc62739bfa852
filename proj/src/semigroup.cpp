#include "beurling/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <queue>

namespace beurling {

PrimeSequence PrimeSequence::from_values(std::vector<double> v, bool complete_list) {
  std::sort(v.begin(), v.end());
  for (double p : v)
    if (!(p > 1.0)) throw DomainError("generalized prime must exceed 1");
  PrimeSequence seq;
  seq.values = std::move(v);
  seq.complete = complete_list;
  return seq;
}

PrimeSequence PrimeSequence::load_csv(std::istream& in, bool complete_list) {
  std::vector<double> v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    v.push_back(std::strtod(line.c_str(), nullptr));
  }
  return from_values(std::move(v), complete_list);
}

namespace {

struct HeapItem {
  double value;
  double log_value;
  std::uint32_t min_index;  // smallest prime index allowed for extension
  bool operator>(const HeapItem& o) const { return value > o.value; }
};

}  // namespace

HalfLineMeasure enumerate_integers(const PrimeSequence& primes, double x_max,
                                   std::uint64_t guard) {
  if (!(x_max >= 1)) throw DomainError("enumerate_integers needs x_max >= 1");
  std::vector<double> ps;
  for (double p : primes.values)
    if (p <= x_max) ps.push_back(p);

  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap;
  heap.push({1.0, 0.0, 0});
  std::vector<double> xs, ms;
  std::uint64_t emitted = 0;
  double last_log = -1;
  const double slack = kTieEps;
  while (!heap.empty()) {
    HeapItem it = heap.top();
    heap.pop();
    if (++emitted > guard)
      throw SizeGuardError("semigroup enumeration exceeded " + std::to_string(guard) +
                           " products");
    // heap emits in non-decreasing order; ties merge in place
    if (!xs.empty() && it.log_value <= last_log + slack * std::max(1.0, last_log)) {
      ms.back() += 1.0;
    } else {
      if (!xs.empty() && it.value < xs.back())
        throw NumericError("heap emitted a decreasing product");
      xs.push_back(it.value);
      ms.push_back(1.0);
      last_log = it.log_value;
    }
    for (std::uint32_t j = it.min_index; j < ps.size(); ++j) {
      // products stay bounded by x_max * p, so plain multiplication is safe
      double v = it.value * ps[j];
      if (v > x_max && !log_close(v, x_max)) break;
      heap.push({v, it.log_value + std::log(ps[j]), j});
    }
  }
  std::vector<Atom> pts(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) pts[i] = {xs[i], ms[i]};
  return HalfLineMeasure::from_points(std::move(pts), false);
}

double count_leq(const std::vector<double>& sorted_values, double x) {
  if (sorted_values.empty()) return 0;
  double lx = std::log(std::max(x, 1e-300));
  double bound = x * std::exp(kTieEps * std::max(1.0, std::abs(lx)));
  auto it = std::upper_bound(sorted_values.begin(), sorted_values.end(), bound);
  return double(it - sorted_values.begin());
}

double count_N(const GeneralizedNumberSystem& sys, double x) {
  if (x > sys.x_max && !log_close(x, sys.x_max))
    throw RangeError("count_N(" + format_double(x) + ") beyond materialized range " +
                     format_double(sys.x_max));
  return sys.dN.cumulative(x);
}

double count_pi(const GeneralizedNumberSystem& sys, double x) {
  if (x > sys.x_max && !log_close(x, sys.x_max))
    throw RangeError("count_pi(" + format_double(x) + ") beyond materialized range " +
                     format_double(sys.x_max));
  if (!sys.primes) throw SpecError("system '" + sys.label + "' has no discrete primes");
  return count_leq(*sys.primes, x);
}

}  // namespace beurling
