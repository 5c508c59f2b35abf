#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "eqlab/primes/primes.hpp"
#include "eqlab/primes/segment.hpp"
#include "eqlab/util/parallel.hpp"

namespace eqlab::primes {

std::vector<std::uint32_t> small_odd_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 3) return out;
  std::vector<bool> composite(limit / 2 + 1, false);  // index i <-> 2i+1
  for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite[m / 2] = true;
  }
  return out;
}

void sieve_segment(std::uint64_t lo, std::size_t count, const std::vector<std::uint32_t>& base,
                   std::vector<std::uint8_t>& flags) {
  flags.assign(count, 1);
  const std::uint64_t hi = lo + 2 * (count - 1);  // last odd number covered
  for (std::uint32_t p32 : base) {
    const std::uint64_t p = p32;
    if (p * p > hi) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    if (start % 2 == 0) start += p;
    for (std::uint64_t i = (start - lo) / 2; i < count; i += p) flags[i] = 0;
  }
  if (lo == 1) flags[0] = 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit, const SieveOptions& opts) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  out.push_back(2);
  if (limit < 3) return out;
  const auto base = small_odd_primes(static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(limit))) + 1);
  const std::uint64_t odd_count = (limit + 1) / 2;  // 1, 3, ..., limit; 1 is cleared in its segment
  const std::size_t seg = std::max<std::size_t>(opts.segment_flags, 64);
  const std::size_t segments = static_cast<std::size_t>((odd_count + seg - 1) / seg);
  std::vector<std::vector<std::uint64_t>> parts(segments);
  parallel_for(segments, opts.threads, [&](std::size_t s) {
    const std::uint64_t lo = 1 + 2 * static_cast<std::uint64_t>(s) * seg;
    const std::uint64_t last = std::min<std::uint64_t>(lo + 2 * (seg - 1), limit % 2 ? limit : limit - 1);
    const std::size_t count = static_cast<std::size_t>((last - lo) / 2 + 1);
    std::vector<std::uint8_t> flags;
    sieve_segment(lo, count, base, flags);
    auto& part = parts[s];
    for (std::size_t i = 0; i < count; ++i) {
      if (flags[i]) part.push_back(lo + 2 * i);
    }
  });
  std::size_t total = 1;
  for (const auto& p : parts) total += p.size();
  out.reserve(total);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

long double rosser_lower(std::uint64_t n) {
  const long double x = static_cast<long double>(n);
  return x * std::log(x);
}

long double rosser_upper(std::uint64_t n) {
  const long double x = static_cast<long double>(n);
  return x * (std::log(x) + std::log(std::log(x)));
}

namespace {

std::uint64_t bound_for_index(std::uint64_t n) {
  if (n < 6) return 13;
  return static_cast<std::uint64_t>(std::ceil(rosser_upper(n))) + 1;
}

} // namespace

std::vector<std::uint64_t> first_primes(std::uint64_t count, const SieveOptions& opts) {
  if (count > opts.index_limit) throw std::out_of_range("prime index limit exceeded");
  if (count == 0) return {};
  auto primes = primes_up_to(bound_for_index(count), opts);
  if (primes.size() < count) throw std::logic_error("Rosser bound did not cover the requested index");
  primes.resize(count);
  return primes;
}

std::uint64_t nth_prime(std::uint64_t n, const SieveOptions& opts) {
  if (n == 0) throw std::invalid_argument("prime indices start at 1");
  if (n > opts.index_limit) throw std::out_of_range("prime index limit exceeded");
  return first_primes(n, opts).back();
}

std::uint64_t euler_phi(std::uint64_t a) {
  if (a == 0) throw std::invalid_argument("euler_phi needs a >= 1");
  std::uint64_t result = a;
  for (std::uint64_t p = 2; p * p <= a; ++p) {
    if (a % p) continue;
    while (a % p == 0) a /= p;
    result -= result / p;
  }
  if (a > 1) result -= result / a;
  return result;
}

APPrime nth_prime_ap(std::uint64_t a, std::uint64_t d, std::uint64_t n, const SieveOptions& opts) {
  if (n == 0) throw std::invalid_argument("prime indices start at 1");
  APPrimeStream stream(a, d, opts.index_limit);
  std::uint64_t p = 0;
  for (std::uint64_t i = 0; i < n; ++i) p = stream.next();
  const long double denom = static_cast<long double>(euler_phi(a)) * rosser_lower(n);
  const double ratio = denom > 0 ? static_cast<double>(p / denom) : HUGE_VAL;
  return {p, ratio};
}

RosserReport rosser_check(std::uint64_t n_max, const SieveOptions& opts) {
  if (n_max < 6) throw std::invalid_argument("rosser_check needs n_max >= 6");
  RosserReport rep;
  rep.n_max = n_max;
  const auto primes = first_primes(n_max, opts);
  bool first_lower = true, first_upper = true;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const long double p = static_cast<long double>(primes[n - 1]);
    const double lower = static_cast<double>(p - rosser_lower(n));
    if (first_lower) {
      rep.min_lower_slack = rep.max_lower_slack = lower;
      first_lower = false;
    }
    rep.min_lower_slack = std::min(rep.min_lower_slack, lower);
    rep.max_lower_slack = std::max(rep.max_lower_slack, lower);
    if (lower < 0 && rep.lower_ok) {
      rep.lower_ok = false;
      rep.first_lower_violation = n;
    }
    if (n < 6) continue;
    const double upper = static_cast<double>(rosser_upper(n) - p);
    if (first_upper) {
      rep.min_upper_slack = rep.max_upper_slack = upper;
      first_upper = false;
    }
    rep.min_upper_slack = std::min(rep.min_upper_slack, upper);
    rep.max_upper_slack = std::max(rep.max_upper_slack, upper);
    if (upper < 0 && rep.upper_ok) {
      rep.upper_ok = false;
      rep.first_upper_violation = n;
    }
  }
  return rep;
}

} // namespace eqlab::primes
