#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "eqlab/equidist/sequence.hpp"
#include "eqlab/equidist/weyl.hpp"
#include "eqlab/lefn/function.hpp"
#include "eqlab/weights/scheme.hpp"

namespace eqlab::equidist {

struct PrimeSubstitutionRow {
  std::uint64_t N = 0;
  double max_gap = 0;         // max over n in [N/2, N] of |f(p_n) - f(n log n)|
  double floor_density = 0;   // weighted share of n <= N with floor(f(n log n)) != floor(f(p_n))
  std::uint64_t disagreements = 0;
};

struct PrimeSubstitutionReport {
  std::uint64_t first_index = 0;
  std::vector<PrimeSubstitutionRow> rows;
};

// f must be slow (not faster than log x); throws std::domain_error otherwise.
PrimeSubstitutionReport prime_substitution_check(const lefn::LEFunction& f, const weights::WeightScheme& scheme,
                                                 const std::vector<std::uint64_t>& checkpoints,
                                                 const PrepareOptions& prepare = {});

struct PerturbationReport {
  double base = 0;
  double plus_n = 0;  // D* of x_n + u(n)
  double plus_p = 0;  // D* of x_n + u(p_n)
  bool within_factor_two = false;
};

// Requires u = O(log W); throws std::domain_error otherwise.
PerturbationReport perturbation_check(const SequenceSpec& base, const lefn::LEFunction& u,
                                      const weights::WeightScheme& scheme, std::uint64_t N,
                                      const DiscrepancyOptions& opts = {});

struct ResidueFilterResult {
  std::complex<double> direct;
  std::complex<double> via_characters;
  double difference = 0;
};

// (1/W(N)) sum w(n) 1[n = t mod q] e(x_n), by the indicator and by the
// character average (1/q) sum_j e((n - t) j / q).
ResidueFilterResult residue_filter_sum(SequenceSpec spec, const weights::WeightScheme& scheme, std::uint64_t q,
                                       std::uint64_t t, std::uint64_t N, const PrepareOptions& prepare = {});

// u_n = sum_{k0 <= k <= n} f(k) with k0 = ceil(domain_floor(f)), as a table
// component starting at k0.
TabulatedComponent partial_sum_sequence(const lefn::LEFunction& f, std::uint64_t N);

} // namespace eqlab::equidist
