#include "eqlab/lefn/coefficient.hpp"

#include <stdexcept>

namespace eqlab::lefn {

HighReal log10e_approx() {
  static const HighReal v = 1 / boost::multiprecision::log(HighReal(10));
  return v;
}

Coefficient Coefficient::irrational(std::string label, HighReal approx, Rational multiplier, std::string text) {
  if (label.empty()) throw std::invalid_argument("irrational label must be nonempty");
  if (approx == 0 || !boost::multiprecision::isfinite(approx)) {
    throw std::invalid_argument("irrational approximation must be finite and nonzero: " + label);
  }
  Coefficient c;
  if (!multiplier.is_zero()) c.irrational_.emplace(std::move(label), IrrationalAtom{approx, multiplier, text.empty() ? eqlab::to_string(approx) : std::move(text)});
  return c;
}

Coefficient Coefficient::irrational_part() const {
  Coefficient c = *this;
  c.rational_ = 0;
  return c;
}

HighReal Coefficient::value() const {
  HighReal v = HighReal(rational_.num()) / rational_.den();
  for (const auto& [label, atom] : irrational_) {
    v += atom.approx * atom.multiplier.num() / atom.multiplier.den();
  }
  return v;
}

int Coefficient::sign() const {
  if (is_zero()) return 0;
  const HighReal v = value();
  if (v == 0) throw std::domain_error("coefficient sign undecidable: " + to_string());
  return v > 0 ? 1 : -1;
}

Coefficient Coefficient::operator-() const {
  Coefficient c = *this;
  c.rational_ = -c.rational_;
  for (auto& [label, atom] : c.irrational_) atom.multiplier = -atom.multiplier;
  return c;
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
  rational_ += o.rational_;
  for (const auto& [label, atom] : o.irrational_) {
    auto it = irrational_.find(label);
    if (it == irrational_.end()) {
      irrational_.emplace(label, atom);
      continue;
    }
    if (it->second.approx != atom.approx) {
      throw std::invalid_argument("label '" + label + "' used with two different approximations");
    }
    it->second.multiplier += atom.multiplier;
    if (it->second.multiplier.is_zero()) irrational_.erase(it);
  }
  return *this;
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
  if (!a.is_rational() && !b.is_rational()) {
    throw std::domain_error("product of two irrational coefficients is outside the grammar");
  }
  if (a.is_rational()) return b.scaled(a.rational_);
  return a.scaled(b.rational_);
}

Coefficient Coefficient::scaled(const Rational& q) const {
  if (q.is_zero()) return {};
  Coefficient c = *this;
  c.rational_ *= q;
  for (auto& [label, atom] : c.irrational_) atom.multiplier *= q;
  return c;
}

bool operator==(const Coefficient& a, const Coefficient& b) {
  if (a.rational_ != b.rational_ || a.irrational_.size() != b.irrational_.size()) return false;
  auto it = b.irrational_.begin();
  for (const auto& [label, atom] : a.irrational_) {
    if (label != it->first || atom.multiplier != it->second.multiplier || atom.approx != it->second.approx) return false;
    ++it;
  }
  return true;
}

std::string Coefficient::to_string() const {
  std::string out;
  auto append = [&out](const Rational& q, const std::string& body) {
    const bool negative = q.sign() < 0;
    const Rational mag = negative ? -q : q;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (body.empty()) {
      out += mag.to_string();
    } else if (mag == Rational(1)) {
      out += body;
    } else {
      out += mag.to_string() + "*" + body;
    }
  };
  if (!rational_.is_zero() || irrational_.empty()) append(rational_, "");
  for (const auto& [label, atom] : irrational_) {
    append(atom.multiplier, "irr(" + atom.text + "," + label + ")");
  }
  return out;
}

} // namespace eqlab::lefn
