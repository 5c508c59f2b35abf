#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eqlab/equidist/weyl.hpp"
#include "eqlab/util/compensated.hpp"
#include "eqlab/util/parallel.hpp"

namespace eqlab::equidist {

double star_discrepancy(std::vector<std::pair<double, double>>& points) {
  if (points.empty()) return 0.0;
  std::sort(points.begin(), points.end());
  CompensatedSum<double> total;
  for (const auto& p : points) total.add(p.second);
  const double mass = total.value();
  if (!(mass > 0)) throw std::domain_error("discrepancy of zero total weight");
  CompensatedSum<double> cum;
  double d = 0;
  std::size_t i = 0;
  while (i < points.size()) {
    const double y = points[i].first;
    d = std::max(d, std::abs(cum.value() / mass - y));  // t = y: mass strictly below y
    while (i < points.size() && points[i].first == y) cum.add(points[i++].second);
    d = std::max(d, std::abs(cum.value() / mass - y));  // t just above y
  }
  return std::min(d, 1.0);
}

double star_discrepancy_binned(const std::vector<std::pair<double, double>>& points, std::size_t bins) {
  if (points.empty()) return 0.0;
  if (bins == 0) throw std::invalid_argument("bins must be positive");
  std::vector<CompensatedSum<double>> hist(bins);
  CompensatedSum<double> total;
  for (const auto& [y, w] : points) {
    auto k = static_cast<std::size_t>(y * static_cast<double>(bins));
    hist[std::min(k, bins - 1)].add(w);
    total.add(w);
  }
  const double mass = total.value();
  CompensatedSum<double> cum;
  double d = 0;
  for (std::size_t k = 0; k < bins; ++k) {
    cum.merge(hist[k]);
    d = std::max(d, std::abs(cum.value() / mass - static_cast<double>(k + 1) / static_cast<double>(bins)));
  }
  return d;
}

double discrepancy(SequenceSpec spec, const weights::WeightScheme& scheme, std::uint64_t N,
                   const DiscrepancyOptions& opts) {
  prepare_streams(spec, N, opts.prepare);
  const SequenceEvaluator eval(spec, opts.precision);
  const std::uint64_t start = first_defined_index({eval}, scheme.n0(), N);
  std::vector<std::pair<double, double>> points(N - start + 1);
  const std::size_t bs = 1 << 15;
  const std::size_t nblocks = (points.size() + bs - 1) / bs;
  parallel_for(nblocks, opts.threads, [&](std::size_t b) {
    const std::size_t lo = b * bs, hi = std::min(points.size(), lo + bs);
    for (std::size_t i = lo; i < hi; ++i) {
      points[i] = {eval.frac(start + i), static_cast<double>(scheme.weight(start + i))};
    }
  });
  const bool binned = opts.mode == DiscrepancyMode::Binned ||
                      (opts.mode == DiscrepancyMode::Auto && points.size() > 10'000'000);
  return binned ? star_discrepancy_binned(points, opts.bins) : star_discrepancy(points);
}

} // namespace eqlab::equidist
