#pragma once

#include <cstdint>
#include <string>

#include "eqlab/lefn/compiled.hpp"
#include "eqlab/lefn/function.hpp"

namespace eqlab::weights {

// w(n) = W'(n), optionally reindexed as n -> w(a n + d) with normalizer
// W(a N + d) / a.
class WeightScheme {
 public:
  WeightScheme() = default;

  const lefn::LEFunction& W() const { return W_; }
  const lefn::LEFunction& w() const { return w_; }
  const std::string& spec() const { return spec_; }
  std::uint64_t n0() const { return n0_; }
  std::int64_t a() const { return a_; }
  std::int64_t d() const { return d_; }

  long double weight(std::uint64_t n) const {
    return w_eval_(static_cast<long double>(a_) * static_cast<long double>(n) + static_cast<long double>(d_));
  }
  // Closed-form normalizer.
  long double normalizer(std::uint64_t N) const {
    return W_eval_(static_cast<long double>(a_) * static_cast<long double>(N) + static_cast<long double>(d_)) /
           static_cast<long double>(a_);
  }

  // Leading behaviour of log of the (reindexed) normalizer.
  lefn::LEFunction log_leading() const;
  // The (reindexed) normalizer as an LEFunction, to leading order.
  lefn::LEFunction normalizer_function() const;

 private:
  friend WeightScheme make_scheme(const std::string& W_text);
  friend WeightScheme reindex(const WeightScheme& s, std::int64_t a, std::int64_t d);
  void finish();

  std::string spec_;
  lefn::LEFunction W_, w_;
  lefn::CompiledFunction<long double> W_eval_, w_eval_;
  std::uint64_t n0_ = 1;
  std::int64_t a_ = 1, d_ = 0;
};

// Accepts a grammar string, or the density names "natural", "log", "loglog".
WeightScheme make_scheme(const std::string& W_text);

// (sum_{n0 <= n <= N} w(n)) / W(N).
double normalizer_ratio(const WeightScheme& s, std::uint64_t N);

WeightScheme reindex(const WeightScheme& s, std::int64_t a, std::int64_t d);

} // namespace eqlab::weights
