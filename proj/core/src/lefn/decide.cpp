#include "eqlab/lefn/decide.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "eqlab/lefn/calculus.hpp"

namespace eqlab::lefn {
namespace {

double ratio_of(const Coefficient& a, const Coefficient& b) { return static_cast<double>(a.value() / b.value()); }

bool tends_to_finite_limit(const LEFunction& r) { return r.is_zero() || growth_sign(r.leading().growth) <= 0; }

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

// Reduced row echelon form over Q, in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rational inv = Rational(1) / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> m, std::size_t cols) {
  const auto pivots = rref(m, cols);
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::int64_t> primitive_integer(const std::vector<Rational>& v) {
  std::int64_t l = 1;
  for (const auto& q : v) l = lcm64(l, q.den());
  std::vector<std::int64_t> out;
  std::int64_t g = 0;
  for (const auto& q : v) {
    const std::int64_t n = (q * Rational(l)).num();
    out.push_back(n);
    g = gcd64(g, n);
  }
  if (g > 1) {
    for (auto& n : out) n /= g;
  }
  // Canonical sign: first nonzero entry positive.
  for (auto n : out) {
    if (n == 0) continue;
    if (n < 0) {
      for (auto& m : out) m = -m;
    }
    break;
  }
  return out;
}

} // namespace

GrowthOrder compare_growth(const LEFunction& f, const LEFunction& g) {
  if (f.is_zero() || g.is_zero()) throw std::domain_error("compare_growth on the zero function");
  const int c = compare(f.leading().growth, g.leading().growth);
  if (c < 0) return {GrowthOrder::Kind::Less, 0.0};
  if (c > 0) return {GrowthOrder::Kind::Greater, 0.0};
  return {GrowthOrder::Kind::Equal, ratio_of(f.leading().coeff, g.leading().coeff)};
}

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc(0);
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

LEFunction RationalPolynomial::to_function() const {
  std::vector<LETerm> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) terms.push_back({coeffs[k], GrowthVector{Coefficient(Rational(static_cast<std::int64_t>(k))), {}}});
  }
  return LEFunction::from_terms(std::move(terms));
}

std::string RationalPolynomial::to_string() const { return to_function().to_string(); }

Decomposition rational_poly_part(const LEFunction& u) {
  Decomposition d;
  std::vector<LETerm> rest;
  for (const auto& t : u.terms()) {
    if (t.growth.is_polynomial() && !t.coeff.rational_part().is_zero()) {
      const auto k = static_cast<std::size_t>(t.growth.x_power.rational_part().num());
      if (d.P.coeffs.size() <= k) d.P.coeffs.resize(k + 1, Rational(0));
      d.P.coeffs[k] = t.coeff.rational_part();
      if (!t.coeff.is_rational()) rest.push_back({t.coeff.irrational_part(), t.growth});
    } else {
      rest.push_back(t);
    }
  }
  d.r = LEFunction::from_terms(std::move(rest));
  return d;
}

void validate_weight(const LEFunction& W) {
  if (W.is_zero()) throw std::domain_error("weight antiderivative is zero");
  const LETerm& lead = W.leading();
  if (lead.coeff.sign() <= 0 || growth_sign(lead.growth) <= 0) {
    throw std::domain_error("W = " + W.to_string() + " does not tend to +infinity");
  }
  const LEFunction w = derivative(W);
  if (w.is_zero() || w.leading().coeff.sign() <= 0) {
    throw std::domain_error("w = W' is not eventually positive for W = " + W.to_string());
  }
  const LEFunction dw = derivative(w);
  if (!dw.is_zero() && dw.leading().coeff.sign() > 0) {
    throw std::domain_error("w = W' is eventually increasing for W = " + W.to_string());
  }
}

LEFunction log_leading(const LEFunction& W) {
  validate_weight(W);
  const GrowthVector& g = W.leading().growth;
  LEFunction out;
  if (!g.x_power.is_zero()) out += LEFunction::iterated_log(1).scaled(g.x_power);
  for (std::size_t j = 0; j < g.log_powers.size(); ++j) {
    if (!g.log_powers[j].is_zero()) out += LEFunction::iterated_log(static_cast<int>(j) + 2).scaled(g.log_powers[j]);
  }
  return out;
}

std::string to_string(UDVerdict::Kind kind) {
  switch (kind) {
    case UDVerdict::Kind::Uniform: return "Uniform";
    case UDVerdict::Kind::Atomic: return "Atomic";
    case UDVerdict::Kind::NonConvergent: return "NonConvergent";
  }
  return "?";
}

std::string describe(const UDVerdict& v) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(v.kind);
  if (v.kind == UDVerdict::Kind::Atomic) {
    os << " period=" << v.period << " atoms={";
    for (std::size_t i = 0; i < v.atoms.size(); ++i) {
      os << (i ? ", " : "") << v.atoms[i] << ":" << v.weights[i].to_string();
    }
    os << "}";
  } else if (v.kind == UDVerdict::Kind::NonConvergent) {
    os << " a=" << v.a;
  }
  return os.str();
}

namespace {

void fill_atoms(UDVerdict& v, const HighReal& shift) {
  const RationalPolynomial& P = v.decomposition.P;
  std::int64_t L = 1;
  for (std::size_t k = 1; k < P.coeffs.size(); ++k) L = lcm64(L, P.coeffs[k].den());
  if (L > 10'000'000) throw std::domain_error("rational polynomial period too large to enumerate");
  auto diff_integral = [&](std::int64_t M) {
    for (std::int64_t d = 0; d < L; ++d) {
      if (!(P(Rational(d + M)) - P(Rational(d))).is_integer()) return false;
    }
    return true;
  };
  std::int64_t period = L;
  for (std::int64_t M = 1; M < L; ++M) {
    if (L % M == 0 && diff_integral(M)) {
      period = M;
      break;
    }
  }
  std::map<Rational, std::int64_t> residues;
  for (std::int64_t d = 0; d < period; ++d) ++residues[P(Rational(d)).frac()];
  std::vector<std::pair<double, Rational>> atoms;
  for (const auto& [frac, count] : residues) {
    HighReal value = HighReal(frac.num()) / frac.den() + shift;
    value -= boost::multiprecision::floor(value);
    atoms.emplace_back(static_cast<double>(value), Rational(count, period));
  }
  std::sort(atoms.begin(), atoms.end());
  v.period = period;
  for (auto& [a, w] : atoms) {
    v.atoms.push_back(a);
    v.weights.push_back(w);
  }
}

} // namespace

UDVerdict decide_ud(const LEFunction& u, const LEFunction& W) {
  const LEFunction L = log_leading(W);
  UDVerdict v;
  v.decomposition = rational_poly_part(u);
  const LEFunction& r = v.decomposition.r;
  if (tends_to_finite_limit(r)) {
    v.kind = UDVerdict::Kind::Atomic;
    HighReal shift = 0;
    if (!r.is_zero() && r.leading().growth.is_zero()) shift = r.leading().coeff.value();
    fill_atoms(v, shift);
    return v;
  }
  const GrowthOrder order = compare_growth(r, L);
  if (order.kind == GrowthOrder::Kind::Greater) {
    v.kind = UDVerdict::Kind::Uniform;
  } else {
    v.kind = UDVerdict::Kind::NonConvergent;
    v.a = order.kind == GrowthOrder::Kind::Equal ? order.ratio : 0.0;
  }
  return v;
}

LEFunction integer_combination(const std::vector<LEFunction>& us, const std::vector<std::int64_t>& c) {
  LEFunction out;
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (c.at(i) != 0) out += us[i].scaled(Coefficient(c[i]));
  }
  return out;
}

VectorVerdict decide_ud_vector(const std::vector<LEFunction>& us, const LEFunction& W, Span span) {
  const LEFunction L = log_leading(W);
  const GrowthVector& threshold = L.leading().growth;
  const std::size_t k = us.size();
  VectorVerdict out;
  if (k == 0) return out;

  if (span == Span::Integer) {
    for (std::size_t i = 0; i < k; ++i) {
      if (decide_ud(us[i], W).kind != UDVerdict::Kind::Uniform) {
        out.uniform = false;
        out.combination.assign(k, 0);
        out.combination[i] = 1;
        return out;
      }
    }
  }

  // Growth classes strictly above log W, with the coefficient of each u_i.
  std::vector<std::pair<GrowthVector, std::vector<Coefficient>>> classes;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& t : us[i].terms()) {
      if (compare(t.growth, threshold) <= 0) continue;
      auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) { return c.first == t.growth; });
      if (it == classes.end()) {
        classes.emplace_back(t.growth, std::vector<Coefficient>(k));
        it = std::prev(classes.end());
      }
      it->second[i] = t.coeff;
    }
  }

  if (span == Span::Integer) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& [growth, coeffs] : classes) {
      if (!growth.is_polynomial()) {
        std::vector<Rational> row(k);
        for (std::size_t i = 0; i < k; ++i) row[i] = coeffs[i].rational_part();
        rows.push_back(std::move(row));
      }
      std::map<std::string, std::vector<Rational>> by_label;
      for (std::size_t i = 0; i < k; ++i) {
        for (const auto& [label, atom] : coeffs[i].atoms()) {
          auto& row = by_label.try_emplace(label, std::vector<Rational>(k)).first->second;
          row[i] = atom.multiplier;
        }
      }
      for (auto& [label, row] : by_label) rows.push_back(std::move(row));
    }
    const auto basis = null_space(rows, k);
    if (basis.empty()) return out;
    std::vector<std::int64_t> best;
    std::int64_t best_norm = 0;
    for (const auto& v : basis) {
      auto c = primitive_integer(v);
      const std::int64_t norm = std::accumulate(c.begin(), c.end(), std::int64_t{0},
                                                [](std::int64_t s, std::int64_t x) { return s + iabs(x); });
      if (best.empty() || norm < best_norm) {
        best = std::move(c);
        best_norm = norm;
      }
    }
    if (decide_ud(integer_combination(us, best), W).kind == UDVerdict::Kind::Uniform) {
      throw std::logic_error("decide_ud_vector produced a combination that does not fail");
    }
    out.uniform = false;
    out.combination = std::move(best);
    return out;
  }

  // Real span: polynomial classes can always be absorbed into a real
  // polynomial, so only non-polynomial classes above log W constrain c.
  std::vector<std::vector<HighReal>> m;
  for (const auto& [growth, coeffs] : classes) {
    if (growth.is_polynomial()) continue;
    std::vector<HighReal> row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = coeffs[i].value();
    m.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const HighReal tol = HighReal("1e-25");
  for (std::size_t col = 0; col < k && row < m.size(); ++col) {
    std::size_t p = row;
    for (std::size_t r = row; r < m.size(); ++r) {
      if (boost::multiprecision::abs(m[r][col]) > boost::multiprecision::abs(m[p][col])) p = r;
    }
    if (boost::multiprecision::abs(m[p][col]) <= tol) continue;
    std::swap(m[p], m[row]);
    const HighReal pivot = m[row][col];
    for (auto& v : m[row]) v /= pivot;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row) continue;
      const HighReal f = m[r][col];
      for (std::size_t c = 0; c < k; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  if (pivots.size() == k) return out;
  std::size_t free = 0;
  while (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) ++free;
  std::vector<double> c(k, 0.0);
  c[free] = 1.0;
  for (std::size_t i = 0; i < pivots.size(); ++i) c[pivots[i]] = static_cast<double>(-m[i][free]);
  out.uniform = false;
  out.real_combination = std::move(c);
  return out;
}

TsujiReport check_tsuji(const LEFunction& u, const LEFunction& W) {
  validate_weight(W);
  const LEFunction du = derivative(u);
  if (u.is_zero() || u.leading().coeff.sign() <= 0 || du.is_zero() || du.leading().coeff.sign() <= 0) {
    throw std::domain_error("u = " + u.to_string() + " is not eventually positive and increasing");
  }
  const LEFunction w = derivative(W);
  TsujiReport rep;
  rep.tends_to_infinity = growth_sign(u.leading().growth) > 0;
  rep.derivative_vanishes = growth_sign(du.leading().growth) < 0;
  rep.ratio_monotone = true;
  const GrowthVector g = du.leading().growth - w.leading().growth + W.leading().growth;
  rep.weighted_ratio_diverges = growth_sign(g) > 0;
  return rep;
}

bool decide_sum_ud(const LEFunction& f, const LEFunction& W) {
  validate_weight(W);
  const Decomposition d = rational_poly_part(f);
  if (d.r.is_zero()) return false;
  const LEFunction w = derivative(W);
  const GrowthVector g = W.leading().growth - w.leading().growth + d.r.leading().growth;
  return growth_sign(g) > 0;
}

} // namespace eqlab::lefn
