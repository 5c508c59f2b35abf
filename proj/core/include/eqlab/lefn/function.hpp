#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqlab/lefn/coefficient.hpp"
#include "eqlab/lefn/rational.hpp"

namespace eqlab::lefn {

// Growth class of a monomial x^{a0} * prod_j (log^(j) x)^{a_j}.
struct GrowthVector {
  Coefficient x_power;              // a0, may carry irrational parts
  std::vector<Rational> log_powers;  // a1..ak, trailing zeros trimmed

  bool is_zero() const { return x_power.is_zero() && log_powers.empty(); }
  // Nonnegative integer x-power, no log factors.
  bool is_polynomial() const;
  int depth() const { return static_cast<int>(log_powers.size()); }

  void trim();
  GrowthVector operator+(const GrowthVector& o) const;
  GrowthVector operator-(const GrowthVector& o) const;
  GrowthVector scaled(const Coefficient& c) const;

  friend bool operator==(const GrowthVector&, const GrowthVector&) = default;
};

// -1, 0, +1 by lexicographic order of (a0, a1, ..., ak).
int compare(const GrowthVector& a, const GrowthVector& b);
// Sign of the vector relative to zero: > 0 means the monomial tends to infinity.
int growth_sign(const GrowthVector& v);

struct LETerm {
  Coefficient coeff;
  GrowthVector growth;

  friend bool operator==(const LETerm&, const LETerm&) = default;
};

LETerm operator*(const LETerm& a, const LETerm& b);

class LEFunction {
 public:
  LEFunction() = default;  // the zero function

  static LEFunction constant(const Coefficient& c);
  static LEFunction monomial(const Coefficient& c, GrowthVector growth);
  static LEFunction identity();                      // x
  static LEFunction iterated_log(int k);             // log^(k) x, k >= 1
  static LEFunction from_terms(std::vector<LETerm> terms);

  const std::vector<LETerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].growth.is_zero()); }
  const LETerm& leading() const;

  // Deepest log iterate used.
  int depth() const;
  // Smallest x at which every log iterate feeding a deeper one is >= e.
  long double domain_floor() const;

  LEFunction operator-() const;
  LEFunction& operator+=(const LEFunction& o);
  LEFunction& operator-=(const LEFunction& o);
  friend LEFunction operator+(LEFunction a, const LEFunction& b) { return a += b; }
  friend LEFunction operator-(LEFunction a, const LEFunction& b) { return a -= b; }
  friend LEFunction operator*(const LEFunction& a, const LEFunction& b);
  LEFunction scaled(const Coefficient& c) const;

  friend bool operator==(const LEFunction&, const LEFunction&) = default;

  std::string to_string() const;

 private:
  void normalize();
  std::vector<LETerm> terms_;  // decreasing growth
};

long double domain_floor_for_depth(int depth);

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

LEFunction parse(std::string_view text);

} // namespace eqlab::lefn
