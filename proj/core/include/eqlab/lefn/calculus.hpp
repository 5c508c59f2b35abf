#pragma once

#include <cstdint>

#include "eqlab/lefn/function.hpp"
#include "eqlab/util/high_real.hpp"

namespace eqlab::lefn {

// Throws std::domain_error when x is below f.domain_floor().
HighReal evaluate(const LEFunction& f, const HighReal& x);

LEFunction derivative(const LEFunction& f);

// Leading-order expansion of u(x log x), truncated to the top two growth
// classes.
LEFunction substitute_xlogx(const LEFunction& u);

// u(a x + d): polynomial terms expanded exactly (binomial), other terms to
// first order (a^p x^p, log(ax+d) ~ log x + log a). Irrational constants that
// appear (a^p, log a) get labels "a^p" / "log(a)".
LEFunction substitute_affine(const LEFunction& u, std::int64_t a, std::int64_t d);

} // namespace eqlab::lefn
