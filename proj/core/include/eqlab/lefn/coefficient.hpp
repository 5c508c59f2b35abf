#pragma once

#include <map>
#include <string>

#include "eqlab/lefn/rational.hpp"
#include "eqlab/util/high_real.hpp"

namespace eqlab::lefn {

// Label used by log10(...) for the constant 1/ln 10.
inline constexpr const char* kLog10eLabel = "log10e";
HighReal log10e_approx();

struct IrrationalAtom {
  HighReal approx;      // value of the labeled constant itself
  Rational multiplier;  // rational multiple carried by this coefficient
  std::string text;     // literal as written, reused when printing
};

// A Q-linear combination  r + sum_k q_k * alpha_k  of 1 and labeled
// irrationals. Labels are declared independent over Q; this is what makes the
// rational/irrational split decidable.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(Rational r) : rational_(r) {}  // NOLINT
  Coefficient(std::int64_t v) : rational_(v) {}  // NOLINT

  static Coefficient irrational(std::string label, HighReal approx, Rational multiplier = 1, std::string text = {});

  bool is_zero() const { return rational_.is_zero() && irrational_.empty(); }
  bool is_rational() const { return irrational_.empty(); }
  const Rational& rational_part() const { return rational_; }
  Coefficient irrational_part() const;
  const std::map<std::string, IrrationalAtom>& atoms() const { return irrational_; }

  HighReal value() const;
  // Sign of the numeric value; throws if the value is numerically zero but
  // the form is not (cannot be decided).
  int sign() const;

  Coefficient operator-() const;
  Coefficient& operator+=(const Coefficient& o);
  Coefficient& operator-=(const Coefficient& o) { return *this += -o; }
  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }

  // Throws std::domain_error when both factors carry irrational parts.
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
  Coefficient scaled(const Rational& q) const;

  friend bool operator==(const Coefficient& a, const Coefficient& b);

  // Grammar text, e.g. "3/2", "irr(1.414...,sqrt2)", "1/2 + 2*irr(...)".
  std::string to_string() const;

 private:
  Rational rational_;
  std::map<std::string, IrrationalAtom> irrational_;
};

} // namespace eqlab::lefn
