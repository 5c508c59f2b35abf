#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eqlab::primes {

inline constexpr std::uint64_t kDefaultIndexLimit = 100'000'000;

struct SieveOptions {
  std::size_t segment_flags = std::size_t{1} << 18;  // odd numbers per segment
  unsigned threads = 1;                              // 0 = hardware concurrency
  std::uint64_t index_limit = kDefaultIndexLimit;
};

// All primes <= limit, ascending. Segments are sieved in parallel.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit, const SieveOptions& opts = {});

// p_1 .. p_count.
std::vector<std::uint64_t> first_primes(std::uint64_t count, const SieveOptions& opts = {});

// As first_primes, backed by the on-disk cache at `cache_path` (or the
// EQLAB_CACHE environment variable when empty). Falls back to sieving and
// refreshes the cache when it is missing or too short.
std::vector<std::uint64_t> first_primes_cached(std::uint64_t count, const SieveOptions& opts = {},
                                               const std::string& cache_path = {});

std::uint64_t nth_prime(std::uint64_t n, const SieveOptions& opts = {});

// n ln n and n (ln n + ln ln n).
long double rosser_lower(std::uint64_t n);
long double rosser_upper(std::uint64_t n);

struct APPrime {
  std::uint64_t prime;
  double ratio;  // prime / (phi(a) n ln n); infinite at n = 1
};

APPrime nth_prime_ap(std::uint64_t a, std::uint64_t d, std::uint64_t n, const SieveOptions& opts = {});

struct RosserReport {
  std::uint64_t n_max = 0;
  bool lower_ok = true;
  bool upper_ok = true;
  std::uint64_t first_lower_violation = 0;
  std::uint64_t first_upper_violation = 0;
  // slack = p_n - n ln n  /  n(ln n + ln ln n) - p_n
  double min_lower_slack = 0, max_lower_slack = 0;
  double min_upper_slack = 0, max_upper_slack = 0;
  bool passed() const { return lower_ok && upper_ok; }
};

RosserReport rosser_check(std::uint64_t n_max, const SieveOptions& opts = {});

std::uint64_t euler_phi(std::uint64_t a);

// Incremental segmented sieve: p_1 = 2, p_2 = 3, ...
class PrimeStream {
 public:
  explicit PrimeStream(std::uint64_t index_limit = kDefaultIndexLimit, std::size_t segment_flags = std::size_t{1} << 18);

  std::uint64_t next();
  // Index of the prime most recently returned (0 before the first call).
  std::uint64_t index() const { return index_; }

 private:
  void refill();
  void ensure_base(std::uint64_t limit);

  std::uint64_t index_limit_;
  std::size_t segment_flags_;
  std::uint64_t index_ = 0;
  std::uint64_t next_odd_ = 3;  // first odd number of the next segment
  std::vector<std::uint64_t> buffer_;
  std::size_t cursor_ = 0;
  std::vector<std::uint32_t> base_;  // odd primes up to base_limit_
  std::uint64_t base_limit_ = 0;
};

// Primes congruent to d mod a, ascending.
class APPrimeStream {
 public:
  APPrimeStream(std::uint64_t a, std::uint64_t d, std::uint64_t index_limit = kDefaultIndexLimit);

  std::uint64_t next();
  std::uint64_t index() const { return index_; }
  std::uint64_t modulus() const { return a_; }
  std::uint64_t residue() const { return d_; }

 private:
  std::uint64_t a_, d_;
  std::uint64_t index_ = 0;
  std::uint64_t index_limit_;
  PrimeStream base_;
};

void write_prime_cache(const std::string& path, const std::vector<std::uint64_t>& primes);
// Returns nullopt if the file is missing or malformed.
std::optional<std::vector<std::uint64_t>> read_prime_cache(const std::string& path, std::uint64_t max_count = UINT64_MAX);

} // namespace eqlab::primes
