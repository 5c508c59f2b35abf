#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqlab/lefn/function.hpp"

namespace eqlab::lefn {

struct GrowthOrder {
  enum class Kind { Less, Equal, Greater };
  Kind kind;
  double ratio = 0.0;  // lim f/g, only meaningful for Equal
};

// Compares |f| and |g| at infinity by leading exponent vectors.
GrowthOrder compare_growth(const LEFunction& f, const LEFunction& g);

struct RationalPolynomial {
  std::vector<Rational> coeffs;  // coeffs[k] multiplies x^k

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Rational operator()(const Rational& x) const;
  LEFunction to_function() const;
  std::string to_string() const;
};

struct Decomposition {
  RationalPolynomial P;
  LEFunction r;
};

// u = P + r with P the rational polynomial content of u.
Decomposition rational_poly_part(const LEFunction& u);

// Throws std::domain_error unless W -> infinity with W' eventually positive
// and non-increasing.
void validate_weight(const LEFunction& W);

// Leading behaviour of log W inside the grammar.
LEFunction log_leading(const LEFunction& W);

struct UDVerdict {
  enum class Kind { Uniform, Atomic, NonConvergent };
  Kind kind = Kind::Uniform;
  std::int64_t period = 0;        // Atomic
  std::vector<double> atoms;      // Atomic, sorted, distinct mod 1
  std::vector<Rational> weights;  // Atomic, parallel to atoms
  double a = 0.0;                 // NonConvergent: lim r / log W
  Decomposition decomposition;
};

std::string to_string(UDVerdict::Kind kind);
std::string describe(const UDVerdict& v);

UDVerdict decide_ud(const LEFunction& u, const LEFunction& W);

enum class Span { Integer, Real };

struct VectorVerdict {
  bool uniform = true;
  std::vector<std::int64_t> combination;  // Span::Integer failing c
  std::vector<double> real_combination;   // Span::Real failing c
};

VectorVerdict decide_ud_vector(const std::vector<LEFunction>& us, const LEFunction& W, Span span = Span::Integer);

struct TsujiReport {
  bool tends_to_infinity = false;   // (i)
  bool derivative_vanishes = false; // (ii)
  bool ratio_monotone = true;       // (iii), automatic in the grammar
  bool weighted_ratio_diverges = false; // (iv)
  bool holds() const { return tends_to_infinity && derivative_vanishes && ratio_monotone && weighted_ratio_diverges; }
};

// Throws std::domain_error if u is not eventually positive and increasing.
TsujiReport check_tsuji(const LEFunction& u, const LEFunction& W);

// Partial sums u_n = sum_{k<=n} f(k): u.d. with respect to W iff
// (W/w) |f - q| -> infinity for every rational polynomial q.
bool decide_sum_ud(const LEFunction& f, const LEFunction& W);

// Sum of c_i * u_i.
LEFunction integer_combination(const std::vector<LEFunction>& us, const std::vector<std::int64_t>& c);

} // namespace eqlab::lefn
