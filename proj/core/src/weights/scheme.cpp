#include "eqlab/weights/scheme.hpp"

#include <cmath>
#include <stdexcept>

#include "eqlab/lefn/calculus.hpp"
#include "eqlab/lefn/decide.hpp"
#include "eqlab/util/compensated.hpp"

namespace eqlab::weights {
namespace {

constexpr std::uint64_t kMonotoneWindow = 10'000;

std::string expand_density_name(const std::string& text) {
  if (text == "natural") return "x";
  if (text == "log") return "log(x)";
  if (text == "loglog") return "log(log(x))";
  return text;
}

} // namespace

void WeightScheme::finish() {
  W_eval_ = lefn::CompiledFunction<long double>(W_);
  w_eval_ = lefn::CompiledFunction<long double>(w_);
  const long double floor = std::max(W_.domain_floor(), w_.domain_floor());
  std::uint64_t n = 1;
  while (static_cast<long double>(a_) * n + d_ < floor) ++n;
  // Push n0 past any early non-monotone stretch of the numeric weights.
  std::uint64_t start = n;
  long double prev = weight(n);
  if (!(prev > 0)) start = n + 1;
  for (std::uint64_t k = n + 1; k <= n + kMonotoneWindow; ++k) {
    const long double cur = weight(k);
    if (!(cur > 0) || cur > prev) start = k + 1;
    prev = cur;
  }
  if (start > n + kMonotoneWindow) throw std::domain_error("weight " + w_.to_string() + " is not numerically non-increasing");
  n0_ = start;
}

lefn::LEFunction WeightScheme::normalizer_function() const {
  if (a_ == 1 && d_ == 0) return W_;
  return lefn::substitute_affine(W_, a_, d_).scaled(lefn::Rational(1, a_));
}

lefn::LEFunction WeightScheme::log_leading() const {
  lefn::validate_weight(W_);
  return lefn::log_leading(normalizer_function());
}

WeightScheme make_scheme(const std::string& W_text) {
  WeightScheme s;
  s.spec_ = expand_density_name(W_text);
  s.W_ = lefn::parse(s.spec_);
  lefn::validate_weight(s.W_);
  s.w_ = lefn::derivative(s.W_);
  s.finish();
  return s;
}

double normalizer_ratio(const WeightScheme& s, std::uint64_t N) {
  if (N < s.n0()) throw std::invalid_argument("normalizer_ratio needs N >= n0");
  CompensatedSum<long double> acc;
  for (std::uint64_t n = s.n0(); n <= N; ++n) acc.add(s.weight(n));
  return static_cast<double>(acc.value() / s.normalizer(N));
}

WeightScheme reindex(const WeightScheme& s, std::int64_t a, std::int64_t d) {
  if (a < 1 || d < 0 || d > a - 1) throw std::invalid_argument("reindex needs a >= 1 and 0 <= d <= a-1");
  if (s.a_ != 1 || s.d_ != 0) throw std::invalid_argument("scheme is already reindexed");
  WeightScheme r = s;
  r.a_ = a;
  r.d_ = d;
  r.spec_ = s.spec_ + "@" + std::to_string(a) + "n+" + std::to_string(d);
  r.finish();
  return r;
}

} // namespace eqlab::weights
