#include "eqlab/lefn/function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eqlab::lefn {

bool GrowthVector::is_polynomial() const {
  if (!log_powers.empty() || !x_power.is_rational()) return false;
  const Rational& p = x_power.rational_part();
  return p.is_integer() && p.sign() >= 0;
}

void GrowthVector::trim() {
  while (!log_powers.empty() && log_powers.back().is_zero()) log_powers.pop_back();
}

GrowthVector GrowthVector::operator+(const GrowthVector& o) const {
  GrowthVector r{x_power + o.x_power, log_powers};
  if (r.log_powers.size() < o.log_powers.size()) r.log_powers.resize(o.log_powers.size());
  for (std::size_t i = 0; i < o.log_powers.size(); ++i) r.log_powers[i] += o.log_powers[i];
  r.trim();
  return r;
}

GrowthVector GrowthVector::operator-(const GrowthVector& o) const { return *this + o.scaled(Coefficient(-1)); }

GrowthVector GrowthVector::scaled(const Coefficient& c) const {
  GrowthVector r{x_power * c, {}};
  if (!log_powers.empty()) {
    if (!c.is_rational()) throw std::domain_error("log-iterate exponents must stay rational");
    for (const auto& p : log_powers) r.log_powers.push_back(p * c.rational_part());
  }
  r.trim();
  return r;
}

int compare(const GrowthVector& a, const GrowthVector& b) {
  if (!(a.x_power == b.x_power)) {
    return (a.x_power - b.x_power).sign();
  }
  const std::size_t n = std::max(a.log_powers.size(), b.log_powers.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Rational pa = i < a.log_powers.size() ? a.log_powers[i] : Rational(0);
    const Rational pb = i < b.log_powers.size() ? b.log_powers[i] : Rational(0);
    if (pa != pb) return pa < pb ? -1 : 1;
  }
  return 0;
}

int growth_sign(const GrowthVector& v) { return compare(v, GrowthVector{}); }

LETerm operator*(const LETerm& a, const LETerm& b) { return {a.coeff * b.coeff, a.growth + b.growth}; }

LEFunction LEFunction::constant(const Coefficient& c) { return monomial(c, {}); }

LEFunction LEFunction::monomial(const Coefficient& c, GrowthVector growth) {
  growth.trim();
  LEFunction f;
  if (!c.is_zero()) f.terms_.push_back({c, std::move(growth)});
  return f;
}

LEFunction LEFunction::identity() { return monomial(1, GrowthVector{Coefficient(1), {}}); }

LEFunction LEFunction::iterated_log(int k) {
  if (k < 1) throw std::invalid_argument("iterated_log needs k >= 1");
  GrowthVector g;
  g.log_powers.assign(static_cast<std::size_t>(k), Rational(0));
  g.log_powers.back() = 1;
  return monomial(1, std::move(g));
}

LEFunction LEFunction::from_terms(std::vector<LETerm> terms) {
  LEFunction f;
  f.terms_ = std::move(terms);
  f.normalize();
  return f;
}

const LETerm& LEFunction::leading() const {
  if (terms_.empty()) throw std::domain_error("zero function has no leading term");
  return terms_.front();
}

int LEFunction::depth() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.growth.depth());
  return d;
}

long double domain_floor_for_depth(int depth) {
  if (depth <= 0) return 1.0L;
  long double v = std::exp(1.0L);
  for (int i = 1; i < depth; ++i) {
    if (v > 11000.0L) return std::numeric_limits<long double>::infinity();
    v = std::exp(v);
  }
  return v;
}

long double LEFunction::domain_floor() const { return domain_floor_for_depth(depth()); }

void LEFunction::normalize() {
  for (auto& t : terms_) t.growth.trim();
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const LETerm& a, const LETerm& b) { return compare(a.growth, b.growth) > 0; });
  std::vector<LETerm> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().growth == t.growth) {
      merged.back().coeff += t.coeff;
    } else {
      if (!merged.empty() && compare(merged.back().growth, t.growth) == 0) {
        throw std::domain_error("two distinct exponent forms with equal numeric value");
      }
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const LETerm& t) { return t.coeff.is_zero(); });
  terms_ = std::move(merged);
}

LEFunction LEFunction::operator-() const { return scaled(Coefficient(-1)); }

LEFunction& LEFunction::operator+=(const LEFunction& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

LEFunction& LEFunction::operator-=(const LEFunction& o) { return *this += -o; }

LEFunction operator*(const LEFunction& a, const LEFunction& b) {
  std::vector<LETerm> out;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) out.push_back(s * t);
  }
  return LEFunction::from_terms(std::move(out));
}

LEFunction LEFunction::scaled(const Coefficient& c) const {
  std::vector<LETerm> out;
  for (const auto& t : terms_) out.push_back({t.coeff * c, t.growth});
  return from_terms(std::move(out));
}

} // namespace eqlab::lefn
