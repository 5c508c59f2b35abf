#pragma once

// Internal sieve kernels shared by the batch sieve and the streams.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace eqlab::primes {

// Odd primes up to `limit`.
std::vector<std::uint32_t> small_odd_primes(std::uint64_t limit);

// flags[i] = 1 iff lo + 2i is prime, for odd lo; base must contain every odd
// prime up to sqrt(lo + 2(count-1)).
void sieve_segment(std::uint64_t lo, std::size_t count, const std::vector<std::uint32_t>& base,
                   std::vector<std::uint8_t>& flags);

} // namespace eqlab::primes
