#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "eqlab/equidist/sequence.hpp"
#include "eqlab/weights/scheme.hpp"

namespace eqlab::equidist {

struct WeylOptions {
  unsigned threads = 1;
  Precision precision = Precision::Fast;
  std::size_t block_size = std::size_t{1} << 15;
  bool with_discrepancy = false;  // 1-D only
  // Running peak of |S_h(N)| over N in [peak_from, peak_to]; off when peak_to == 0.
  std::uint64_t peak_from = 0;
  std::uint64_t peak_to = 0;
  PrepareOptions prepare;
};

struct WeylReport {
  std::string sequence_id;
  std::string weight;
  std::vector<std::vector<int>> freqs;
  std::vector<std::uint64_t> checkpoints;
  std::vector<std::vector<std::complex<double>>> sums;  // [freq][checkpoint]
  std::vector<double> s0;                               // h = 0 sum per checkpoint
  std::vector<double> discrepancy;                      // per checkpoint, NaN if not computed
  std::vector<double> peak;                             // per freq, NaN if not computed
  std::uint64_t first_index = 0;

  double magnitude(std::size_t f, std::size_t c) const { return std::abs(sums[f][c]); }
};

// S_h(N) = (1/W(N)) sum_{n <= N} w(n) e(<h, x_n>) for every h and checkpoint N,
// in one pass over fixed blocks reduced pairwise in block order.
WeylReport weyl_sums(std::vector<SequenceSpec> coords, const weights::WeightScheme& scheme,
                     const std::vector<std::vector<int>>& freqs, const std::vector<std::uint64_t>& checkpoints,
                     const WeylOptions& opts = {});

WeylReport weyl_sums(const SequenceSpec& spec, const weights::WeightScheme& scheme, const std::vector<int>& hs,
                     const std::vector<std::uint64_t>& checkpoints, const WeylOptions& opts = {});

enum class DiscrepancyMode { Auto, Exact, Binned };

struct DiscrepancyOptions {
  unsigned threads = 1;
  Precision precision = Precision::Fast;
  DiscrepancyMode mode = DiscrepancyMode::Auto;  // Auto: exact up to 1e7 points
  std::size_t bins = 10'000;
  PrepareOptions prepare;
};

// Weighted star discrepancy of (frac, weight) pairs, normalized by the total
// weight. Sorts in place.
double star_discrepancy(std::vector<std::pair<double, double>>& points);
double star_discrepancy_binned(const std::vector<std::pair<double, double>>& points, std::size_t bins);

double discrepancy(SequenceSpec spec, const weights::WeightScheme& scheme, std::uint64_t N,
                   const DiscrepancyOptions& opts = {});

// |(1/W(N)) sum w(n) e(x_{n+h} - x_n)| for h = 1..h_max.
std::vector<double> vdc_probe(SequenceSpec spec, const weights::WeightScheme& scheme, int h_max, std::uint64_t N,
                              const WeylOptions& opts = {});

std::vector<std::uint64_t> decade_checkpoints(int from_exp, int to_exp);

} // namespace eqlab::equidist
