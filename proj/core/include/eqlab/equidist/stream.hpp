#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "eqlab/util/high_real.hpp"

namespace eqlab::equidist {

struct PrepareOptions {
  unsigned threads = 1;
  std::string cache_path;  // empty: EQLAB_CACHE or no cache
};

// Random-access view of an index sequence: n, an+d, p_n, p_n^{a,d}, n log n,
// or g(n) with g(n) log g(n) = n. Prime kinds need prepare(N) before value().
class IndexStream {
 public:
  enum class Kind { Naturals, AP, Primes, APPrimes, NLogN, InverseG };

  IndexStream() = default;
  static IndexStream naturals() { return IndexStream(Kind::Naturals); }
  static IndexStream ap(std::uint64_t a, std::uint64_t d);
  static IndexStream primes() { return IndexStream(Kind::Primes); }
  static IndexStream ap_primes(std::uint64_t a, std::uint64_t d);
  static IndexStream nlogn() { return IndexStream(Kind::NLogN); }
  static IndexStream inverse_g() { return IndexStream(Kind::InverseG); }

  // "naturals", "ap:a,d", "primes", "apprimes:a,d" (alias "approimes"),
  // "nlogn", "invg".
  static IndexStream parse(std::string_view text);

  Kind kind() const { return kind_; }
  std::string name() const;
  bool needs_primes() const { return kind_ == Kind::Primes || kind_ == Kind::APPrimes; }

  // Makes value(n) valid for n <= N. No-op for closed-form kinds.
  void prepare(std::uint64_t N, const PrepareOptions& opts = {});
  std::uint64_t prepared() const { return table_ ? table_->size() : 0; }

  long double value(std::uint64_t n) const;
  HighReal value_high(std::uint64_t n) const;

 private:
  explicit IndexStream(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Naturals;
  std::uint64_t a_ = 1, d_ = 0;
  std::shared_ptr<const std::vector<std::uint64_t>> table_;
};

// Solves y log y = n by Newton iteration.
long double inverse_g(long double n);
HighReal inverse_g(const HighReal& n);

} // namespace eqlab::equidist
