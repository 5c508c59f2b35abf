#pragma once

#include <cmath>
#include <type_traits>
#include <vector>

#include "eqlab/lefn/function.hpp"
#include "eqlab/util/high_real.hpp"

namespace eqlab::lefn {

// Flattened LEFunction for hot loops. T is long double (fast mode) or
// HighReal (strict mode). No domain check on the call path; use
// domain_floor() up front.
template <typename T>
class CompiledFunction {
 public:
  CompiledFunction() = default;
  explicit CompiledFunction(const LEFunction& f) : depth_(f.depth()), floor_(f.domain_floor()) {
    for (const auto& t : f.terms()) {
      Term term;
      term.coeff = convert(t.coeff.value());
      if (!t.growth.x_power.is_zero()) term.factors.push_back(make_factor(0, t.growth.x_power));
      for (std::size_t j = 0; j < t.growth.log_powers.size(); ++j) {
        if (!t.growth.log_powers[j].is_zero()) {
          term.factors.push_back(make_factor(static_cast<int>(j) + 1, Coefficient(t.growth.log_powers[j])));
        }
      }
      terms_.push_back(std::move(term));
    }
  }

  long double domain_floor() const { return floor_; }
  int depth() const { return depth_; }

  T operator()(T x) const {
    using std::log;
    T iter[8];
    iter[0] = x;
    for (int j = 1; j <= depth_ && j < 8; ++j) iter[j] = log(iter[j - 1]);
    T total = 0;
    for (const auto& term : terms_) {
      T v = term.coeff;
      for (const auto& f : term.factors) v *= apply(f, iter[f.index]);
      total += v;
    }
    return total;
  }

 private:
  enum class Kind { Integer, Sqrt, InvSqrt, General };
  struct Factor {
    int index;
    Kind kind;
    int n;
    T exponent;
  };
  struct Term {
    T coeff;
    std::vector<Factor> factors;
  };

  static T convert(const HighReal& v) {
    if constexpr (std::is_same_v<T, HighReal>) {
      return v;
    } else {
      return static_cast<T>(v);
    }
  }

  static Factor make_factor(int index, const Coefficient& e) {
    Factor f{index, Kind::General, 0, convert(e.value())};
    if (e.is_rational()) {
      const Rational& q = e.rational_part();
      if (q.is_integer() && q.num() >= -16 && q.num() <= 16) {
        f.kind = Kind::Integer;
        f.n = static_cast<int>(q.num());
      } else if (q == Rational(1, 2)) {
        f.kind = Kind::Sqrt;
      } else if (q == Rational(-1, 2)) {
        f.kind = Kind::InvSqrt;
      }
    }
    return f;
  }

  static T apply(const Factor& f, const T& base) {
    using std::pow;
    using std::sqrt;
    switch (f.kind) {
      case Kind::Integer: {
        int n = f.n < 0 ? -f.n : f.n;
        T r = 1;
        T b = base;
        while (n) {
          if (n & 1) r *= b;
          n >>= 1;
          if (n) b *= b;
        }
        return f.n < 0 ? T(1) / r : r;
      }
      case Kind::Sqrt:
        return sqrt(base);
      case Kind::InvSqrt:
        return T(1) / sqrt(base);
      case Kind::General:
        break;
    }
    return pow(base, f.exponent);
  }

  std::vector<Term> terms_;
  int depth_ = 0;
  long double floor_ = 1.0L;
};

} // namespace eqlab::lefn
