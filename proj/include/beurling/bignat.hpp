#pragma once

#include <cstdint>
#include <vector>

#include "beurling/errors.hpp"

namespace beurling {

// Unsigned big integer, base 2^64 little-endian limbs. Just enough arithmetic
// for exact partition-number recurrences at any order we materialize.
class BigNat {
  using u128 = unsigned __int128;

 public:
  BigNat() = default;
  explicit BigNat(std::uint64_t v) {
    if (v) limbs_.push_back(v);
  }

  bool is_zero() const { return limbs_.empty(); }

  void add(const BigNat& o) {
    if (limbs_.size() < o.limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    u128 carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      u128 s = carry + limbs_[i];
      if (i < o.limbs_.size()) s += o.limbs_[i];
      limbs_[i] = std::uint64_t(s);
      carry = s >> 64;
    }
    if (carry) limbs_.push_back(std::uint64_t(carry));
  }

  // requires *this >= o
  void sub(const BigNat& o) {
    u128 borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      u128 take = borrow + (i < o.limbs_.size() ? o.limbs_[i] : 0);
      u128 have = limbs_[i];
      if (have >= take) {
        limbs_[i] = std::uint64_t(have - take);
        borrow = 0;
      } else {
        limbs_[i] = std::uint64_t((u128(1) << 64) + have - take);
        borrow = 1;
      }
    }
    if (borrow) throw NumericError("BigNat subtraction underflow");
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  int compare(const BigNat& o) const {
    if (limbs_.size() != o.limbs_.size())
      return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
  }

  double to_double() const {
    double v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;)
      v = v * 18446744073709551616.0 + double(limbs_[i]);
    return v;
  }

  std::uint64_t low_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }
  std::size_t limb_count() const { return limbs_.size(); }

 private:
  std::vector<std::uint64_t> limbs_;
};

}  // namespace beurling
