#include "eqlab/lefn/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eqlab/util/format.hpp"

namespace eqlab::lefn {
namespace {

HighReal rational_value(const Rational& q) { return HighReal(q.num()) / q.den(); }

// Unit growth vector for log^(j) x (j >= 1), raised to `power`.
GrowthVector log_unit(std::size_t j, const Rational& power) {
  GrowthVector g;
  g.log_powers.assign(j, Rational(0));
  g.log_powers[j - 1] = power;
  g.trim();
  return g;
}

GrowthVector x_unit(const Coefficient& power) { return GrowthVector{power, {}}; }

// Product that stays inside the linear-form model: when both factors are
// irrational the result becomes a fresh label carrying the numeric product.
Coefficient product_or_label(const Coefficient& a, const Coefficient& b) {
  if (a.is_rational() || b.is_rational()) return a * b;
  const std::string label = "(" + a.to_string() + ")*(" + b.to_string() + ")";
  return Coefficient::irrational("p" + hex64(fnv1a64(label)), a.value() * b.value());
}

Rational log_power(const GrowthVector& g, std::size_t j) {
  return j <= g.log_powers.size() ? g.log_powers[j - 1] : Rational(0);
}

} // namespace

HighReal evaluate(const LEFunction& f, const HighReal& x) {
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  const int depth = f.depth();
  if (x < HighReal(f.domain_floor())) {
    throw std::domain_error("x = " + eqlab::to_string(x) + " is below the domain floor of " + f.to_string());
  }
  std::vector<HighReal> iter(static_cast<std::size_t>(depth) + 1);
  iter[0] = x;
  for (int j = 1; j <= depth; ++j) iter[j] = log(iter[j - 1]);
  HighReal total = 0;
  for (const auto& t : f.terms()) {
    HighReal v = t.coeff.value();
    if (!t.growth.x_power.is_zero()) {
      const auto& p = t.growth.x_power;
      if (p.is_rational() && p.rational_part().is_integer()) {
        v *= pow(x, static_cast<int>(p.rational_part().num()));
      } else {
        v *= pow(x, p.value());
      }
    }
    for (std::size_t j = 1; j <= t.growth.log_powers.size(); ++j) {
      const Rational& a = t.growth.log_powers[j - 1];
      if (a.is_zero()) continue;
      if (a.is_integer()) {
        v *= pow(iter[j], static_cast<int>(a.num()));
      } else {
        v *= pow(iter[j], rational_value(a));
      }
    }
    total += v;
  }
  return total;
}

LEFunction derivative(const LEFunction& f) {
  std::vector<LETerm> out;
  for (const auto& t : f.terms()) {
    const GrowthVector& g = t.growth;
    // x^{a0-1} times the original log factors.
    const GrowthVector base = g + x_unit(Coefficient(-1));
    if (!g.x_power.is_zero()) out.push_back({t.coeff * g.x_power, base});
    // d/dx L_j^{b} = b L_j^{b-1} / (x L_1 ... L_{j-1}).
    for (std::size_t j = 1; j <= g.log_powers.size(); ++j) {
      const Rational& b = g.log_powers[j - 1];
      if (b.is_zero()) continue;
      GrowthVector h = base + log_unit(j, Rational(-1));
      for (std::size_t i = 1; i < j; ++i) h = h + log_unit(i, Rational(-1));
      out.push_back({t.coeff.scaled(b), h});
    }
  }
  return LEFunction::from_terms(std::move(out));
}

LEFunction substitute_xlogx(const LEFunction& u) {
  std::vector<LETerm> out;
  for (const auto& t : u.terms()) {
    const GrowthVector& g = t.growth;
    // Exact image of the monomial's leading part: x^{a0} L_1^{a0} * prod L_j^{a_j}.
    GrowthVector main = g;
    if (!g.x_power.is_zero()) {
      if (!g.x_power.is_rational() && !g.log_powers.empty()) {
        throw std::domain_error("x^irrational times log factors cannot be substituted exactly");
      }
      if (!g.x_power.is_rational()) {
        // (x log x)^{irr} would need an irrational log exponent; keep the x part only.
        out.push_back({t.coeff, main});
        continue;
      }
      main = main + log_unit(1, g.x_power.rational_part());
    }
    out.push_back({t.coeff, main});
    // First-order corrections a_j * delta_j / L_j with delta_1 = L_2,
    // delta_2 = L_2/L_1, delta_j = 1/(L_1 L_3 ... L_{j-1}) for j >= 3.
    for (std::size_t j = 1; j <= g.log_powers.size(); ++j) {
      const Rational& a = g.log_powers[j - 1];
      if (a.is_zero()) continue;
      GrowthVector corr = main + log_unit(j, Rational(-1));
      if (j == 1) {
        corr = corr + log_unit(2, Rational(1));
      } else if (j == 2) {
        corr = corr + log_unit(2, Rational(1)) + log_unit(1, Rational(-1));
      } else {
        corr = corr + log_unit(1, Rational(-1));
        for (std::size_t i = 3; i < j; ++i) corr = corr + log_unit(i, Rational(-1));
      }
      out.push_back({t.coeff.scaled(a), corr});
    }
  }
  LEFunction full = LEFunction::from_terms(std::move(out));
  std::vector<LETerm> kept;
  for (const auto& t : full.terms()) {
    if (kept.size() == 2) break;
    kept.push_back(t);
  }
  return LEFunction::from_terms(std::move(kept));
}

LEFunction substitute_affine(const LEFunction& u, std::int64_t a, std::int64_t d) {
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  if (a < 1) throw std::invalid_argument("affine substitution needs a >= 1");
  const Coefficient log_a =
      a == 1 ? Coefficient() : Coefficient::irrational("log(" + std::to_string(a) + ")", log(HighReal(a)));
  std::vector<LETerm> out;
  for (const auto& t : u.terms()) {
    const GrowthVector& g = t.growth;
    if (g.is_polynomial()) {
      const std::int64_t p = g.x_power.rational_part().num();
      Rational binom(1);
      for (std::int64_t k = 0; k <= p; ++k) {
        // C(p,k) a^k d^{p-k} x^k
        if (k > 0) binom = binom * Rational(p - k + 1) / Rational(k);
        const Rational c = binom * Rational(a).pow(k) * Rational(d).pow(p - k);
        if (c.is_zero()) continue;
        out.push_back({t.coeff.scaled(c), x_unit(Coefficient(Rational(k)))});
      }
      continue;
    }
    Coefficient scale = 1;
    if (!g.x_power.is_zero() && a != 1) {
      const auto& p = g.x_power;
      if (p.is_rational() && p.rational_part().is_integer()) {
        scale = Rational(a).pow(p.rational_part().num());
      } else {
        const HighReal v = pow(HighReal(a), p.value());
        scale = Coefficient::irrational(std::to_string(a) + "^(" + p.to_string() + ")", v);
      }
    }
    const Coefficient c = product_or_label(t.coeff, scale);
    out.push_back({c, g});
    const Rational b1 = log_power(g, 1);
    if (!b1.is_zero() && !log_a.is_zero()) {
      out.push_back({product_or_label(c, log_a.scaled(b1)), g + log_unit(1, Rational(-1))});
    }
  }
  return LEFunction::from_terms(std::move(out));
}

} // namespace eqlab::lefn
