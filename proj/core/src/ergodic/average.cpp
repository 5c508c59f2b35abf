#include "eqlab/ergodic/average.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "eqlab/lefn/decide.hpp"
#include "eqlab/util/compensated.hpp"
#include "eqlab/util/parallel.hpp"

namespace eqlab::ergodic {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::complex<double> unit(double phase) {
  phase -= std::floor(phase);
  return {std::cos(kTwoPi * phase), std::sin(kTwoPi * phase)};
}

} // namespace

void DiagonalSystem::validate() const {
  if (dimension == 0) throw std::invalid_argument("system dimension must be positive");
  if (f.size() != dimension) throw std::invalid_argument("f has the wrong dimension");
  for (const auto& row : phases) {
    if (row.size() != dimension) throw std::invalid_argument("phase row has the wrong dimension");
    for (long double t : row) {
      if (!std::isfinite(t)) throw std::invalid_argument("phase must be finite");
    }
  }
}

std::vector<bool> DiagonalSystem::invariant_mask() const {
  std::vector<bool> mask(dimension, true);
  for (const auto& row : phases) {
    for (std::size_t j = 0; j < dimension; ++j) {
      if (row[j] != std::floor(row[j])) mask[j] = false;
    }
  }
  return mask;
}

Vector DiagonalSystem::project(const Vector& v) const {
  if (v.size() != dimension) throw std::invalid_argument("vector has the wrong dimension");
  const auto mask = invariant_mask();
  Vector out(dimension);
  for (std::size_t j = 0; j < dimension; ++j) out[j] = mask[j] ? v[j] : 0.0;
  return out;
}

equidist::SequenceSpec coordinate_sequence(const DiagonalSystem& sys, const std::vector<lefn::LEFunction>& us,
                                           const equidist::IndexStream& stream, std::size_t j) {
  equidist::SequenceSpec spec;
  spec.id = "coord" + std::to_string(j);
  for (std::size_t i = 0; i < us.size(); ++i) {
    spec.add(us[i], stream, equidist::FloorMode::Floor, sys.phases[i][j]);
  }
  return spec;
}

ErgodicReport weighted_average(const DiagonalSystem& sys, const std::vector<lefn::LEFunction>& us,
                               const equidist::IndexStream& stream, const weights::WeightScheme& scheme,
                               const std::vector<std::uint64_t>& checkpoints, const ErgodicOptions& opts) {
  sys.validate();
  if (us.size() != sys.phases.size()) throw std::invalid_argument("need one function per unitary");
  if (us.empty()) throw std::invalid_argument("need at least one unitary");
  if (checkpoints.empty()) throw std::invalid_argument("at least one checkpoint required");
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1]) throw std::invalid_argument("checkpoints must be strictly increasing");
  }

  ErgodicReport rep;
  rep.checkpoints = checkpoints;
  const auto verdict = lefn::decide_ud_vector(us, scheme.W(), lefn::Span::Real);
  if (!verdict.uniform) {
    rep.exploratory = true;
    rep.warning = "span condition fails for the given functions; averages are exploratory";
  }

  const std::uint64_t N = checkpoints.back();
  const std::size_t D = sys.dimension;
  std::vector<equidist::SequenceSpec> coords;
  for (std::size_t j = 0; j < D; ++j) coords.push_back(coordinate_sequence(sys, us, stream, j));
  equidist::prepare_streams(coords, N, opts.prepare);
  std::vector<equidist::SequenceEvaluator> evals;
  for (const auto& c : coords) evals.emplace_back(c, opts.precision);
  rep.first_index = equidist::first_defined_index(evals, scheme.n0(), N);

  // sums[j][c] = (1/W) sum w(n) e(x_{j,n}); coordinates run in parallel.
  std::vector<std::vector<std::complex<double>>> sums(D, std::vector<std::complex<double>>(checkpoints.size()));
  std::vector<double> mass(checkpoints.size(), 0.0);
  parallel_for(D, opts.threads, [&](std::size_t j) {
    CompensatedComplex<double> acc;
    CompensatedSum<double> m;
    std::size_t c = 0;
    while (c < checkpoints.size() && checkpoints[c] < rep.first_index) ++c;
    for (std::uint64_t n = rep.first_index; n <= N; ++n) {
      const double w = static_cast<double>(scheme.weight(n));
      acc.add(w * unit(evals[j].frac(n)));
      m.add(w);
      if (n == checkpoints[c]) {
        const double W = static_cast<double>(scheme.normalizer(n));
        sums[j][c] = acc.value() / W;
        if (j == 0) mass[c] = m.value() / W;
        ++c;
      }
    }
  });

  rep.pf = sys.project(sys.f);
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    Vector a(D);
    double dist2 = 0;
    for (std::size_t j = 0; j < D; ++j) {
      a[j] = sys.f[j] * sums[j][c];
      dist2 += std::norm(a[j] - mass[c] * rep.pf[j]);
    }
    rep.average.push_back(std::move(a));
    rep.s0.push_back(mass[c]);
    rep.distance.push_back(std::sqrt(dist2));
  }
  return rep;
}

} // namespace eqlab::ergodic
