#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "eqlab/primes/primes.hpp"
#include "eqlab/primes/segment.hpp"

namespace eqlab::primes {

PrimeStream::PrimeStream(std::uint64_t index_limit, std::size_t segment_flags)
    : index_limit_(index_limit), segment_flags_(std::max<std::size_t>(segment_flags, 64)) {}

void PrimeStream::ensure_base(std::uint64_t limit) {
  if (limit <= base_limit_) return;
  const std::uint64_t target = std::max(limit, 2 * base_limit_);
  base_ = small_odd_primes(target);
  base_limit_ = target;
}

void PrimeStream::refill() {
  const std::uint64_t lo = next_odd_;
  const std::uint64_t hi = lo + 2 * (segment_flags_ - 1);
  ensure_base(static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(hi))) + 1);
  std::vector<std::uint8_t> flags;
  sieve_segment(lo, segment_flags_, base_, flags);
  buffer_.clear();
  cursor_ = 0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) buffer_.push_back(lo + 2 * i);
  }
  next_odd_ = hi + 2;
}

std::uint64_t PrimeStream::next() {
  if (index_ >= index_limit_) throw std::out_of_range("prime stream index limit exceeded");
  ++index_;
  if (index_ == 1) return 2;
  while (cursor_ == buffer_.size()) refill();
  return buffer_[cursor_++];
}

APPrimeStream::APPrimeStream(std::uint64_t a, std::uint64_t d, std::uint64_t index_limit)
    : a_(a), d_(d), index_limit_(index_limit), base_(UINT64_MAX) {
  if (a < 1) throw std::invalid_argument("AP modulus must be >= 1");
  if (d < 1 || d > a) throw std::invalid_argument("AP residue must satisfy 1 <= d <= a");
  if (std::gcd(a, d) != 1) throw std::invalid_argument("gcd(a, d) != 1: the progression holds at most one prime");
}

std::uint64_t APPrimeStream::next() {
  if (index_ >= index_limit_) throw std::out_of_range("AP prime stream index limit exceeded");
  const std::uint64_t target = d_ % a_;
  for (;;) {
    const std::uint64_t p = base_.next();
    if (p % a_ == target) {
      ++index_;
      return p;
    }
  }
}

} // namespace eqlab::primes
