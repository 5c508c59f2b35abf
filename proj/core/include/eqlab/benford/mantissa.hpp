#pragma once

#include <cstdint>

#include "eqlab/util/high_real.hpp"

namespace eqlab::benford {

// Running log10 of a product: integer part plus a double-double fraction
// kept in [0, 1).
class MantissaAccumulator {
 public:
  void add(double log10_term);
  void add_pair(double hi, double lo);  // term given as an unevaluated sum hi + lo

  std::int64_t integer_part() const { return integer_; }
  double fractional() const { return hi_ + lo_; }
  // Full value, rounded; only meaningful while |value| < 2^53.
  double value() const { return static_cast<double>(integer_) + fractional(); }

 private:
  void normalize();

  std::int64_t integer_ = 0;
  double hi_ = 0, lo_ = 0;
};

// Same contract in float128; used as the cross-check pass.
class StrictMantissaAccumulator {
 public:
  void add(const HighReal& log10_term);

  std::int64_t integer_part() const { return integer_; }
  HighReal fractional() const { return frac_; }

 private:
  std::int64_t integer_ = 0;
  HighReal frac_ = 0;
};

} // namespace eqlab::benford
