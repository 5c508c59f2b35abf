#include "eqlab/equidist/checks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eqlab/lefn/compiled.hpp"
#include "eqlab/lefn/decide.hpp"
#include "eqlab/util/compensated.hpp"

namespace eqlab::equidist {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::complex<double> unit(double phase) {
  phase -= std::floor(phase);
  return {std::cos(kTwoPi * phase), std::sin(kTwoPi * phase)};
}

} // namespace

PrimeSubstitutionReport prime_substitution_check(const lefn::LEFunction& f, const weights::WeightScheme& scheme,
                                                 const std::vector<std::uint64_t>& checkpoints,
                                                 const PrepareOptions& prepare) {
  if (checkpoints.empty()) throw std::invalid_argument("at least one checkpoint required");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) throw std::invalid_argument("checkpoints must increase");
  if (!f.is_constant() && lefn::compare_growth(f, lefn::LEFunction::iterated_log(1)).kind == lefn::GrowthOrder::Kind::Greater) {
    throw std::domain_error("prime substitution needs f = O(log x), got " + f.to_string());
  }
  const std::uint64_t N = checkpoints.back();
  IndexStream primes = IndexStream::primes();
  primes.prepare(N, prepare);
  const lefn::CompiledFunction<long double> fc(f);
  const long double floor_x = fc.domain_floor();

  std::uint64_t n = std::max<std::uint64_t>(scheme.n0(), 2);
  while (static_cast<long double>(n) * std::log(static_cast<long double>(n)) < floor_x) ++n;

  PrimeSubstitutionReport rep;
  rep.first_index = n;
  CompensatedSum<long double> mass, bad;
  std::uint64_t count = 0;
  std::size_t c = 0;
  PrimeSubstitutionRow row;
  for (; n <= N; ++n) {
    const long double nn = static_cast<long double>(n);
    const long double a = fc(primes.value(n));
    const long double b = fc(nn * std::log(nn));
    const long double w = scheme.weight(n);
    mass.add(w);
    if (std::floor(a) != std::floor(b)) {
      bad.add(w);
      ++count;
    }
    if (2 * n >= checkpoints[c]) row.max_gap = std::max(row.max_gap, static_cast<double>(std::fabs(a - b)));
    while (c < checkpoints.size() && n == checkpoints[c]) {
      row.N = n;
      row.disagreements = count;
      row.floor_density = static_cast<double>(bad.value() / mass.value());
      rep.rows.push_back(row);
      row = {};
      ++c;
      // The next window [N'/2, N'] may start before the current n.
      if (c < checkpoints.size() && checkpoints[c] / 2 <= n) {
        for (std::uint64_t m = std::max<std::uint64_t>(rep.first_index, (checkpoints[c] + 1) / 2); m <= n; ++m) {
          const long double mm = static_cast<long double>(m);
          row.max_gap = std::max(row.max_gap, static_cast<double>(std::fabs(fc(primes.value(m)) - fc(mm * std::log(mm)))));
        }
      }
    }
  }
  if (rep.rows.size() != checkpoints.size()) throw std::invalid_argument("checkpoint below the first admissible index");
  return rep;
}

PerturbationReport perturbation_check(const SequenceSpec& base, const lefn::LEFunction& u,
                                      const weights::WeightScheme& scheme, std::uint64_t N,
                                      const DiscrepancyOptions& opts) {
  if (!u.is_constant() && lefn::compare_growth(u, scheme.log_leading()).kind == lefn::GrowthOrder::Kind::Greater) {
    throw std::domain_error("perturbation " + u.to_string() + " grows faster than log W");
  }
  PerturbationReport rep;
  rep.base = discrepancy(base, scheme, N, opts);
  SequenceSpec with_n = base;
  with_n.add(u, IndexStream::naturals());
  rep.plus_n = discrepancy(with_n, scheme, N, opts);
  SequenceSpec with_p = base;
  with_p.add(u, IndexStream::primes());
  rep.plus_p = discrepancy(with_p, scheme, N, opts);
  const double hi = std::max(rep.plus_n, rep.plus_p), lo = std::min(rep.plus_n, rep.plus_p);
  rep.within_factor_two = hi <= 2 * lo;
  return rep;
}

ResidueFilterResult residue_filter_sum(SequenceSpec spec, const weights::WeightScheme& scheme, std::uint64_t q,
                                       std::uint64_t t, std::uint64_t N, const PrepareOptions& prepare) {
  if (q < 2) throw std::invalid_argument("modulus must be >= 2");
  t %= q;
  prepare_streams(spec, N, prepare);
  const SequenceEvaluator eval(spec, Precision::Fast);
  const std::uint64_t start = first_defined_index({eval}, scheme.n0(), N);

  // chars[r] = (1/q) sum_j e(r j / q), with exact integer phases.
  std::vector<std::complex<double>> chars(q);
  for (std::uint64_t r = 0; r < q; ++r) {
    CompensatedComplex<double> s;
    for (std::uint64_t j = 0; j < q; ++j) s.add(unit(static_cast<double>((r * j) % q) / static_cast<double>(q)));
    chars[r] = s.value() / static_cast<double>(q);
  }

  CompensatedComplex<double> direct, via;
  for (std::uint64_t n = start; n <= N; ++n) {
    const auto z = static_cast<double>(scheme.weight(n)) * unit(eval.frac(n));
    const std::uint64_t r = (n % q + q - t) % q;
    if (r == 0) direct.add(z);
    via.add(z * chars[r]);
  }
  const double W = static_cast<double>(scheme.normalizer(N));
  ResidueFilterResult res;
  res.direct = direct.value() / W;
  res.via_characters = via.value() / W;
  res.difference = std::abs(res.direct - res.via_characters);
  return res;
}

TabulatedComponent partial_sum_sequence(const lefn::LEFunction& f, std::uint64_t N) {
  const lefn::CompiledFunction<long double> fc(f);
  const std::uint64_t k0 = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(fc.domain_floor())));
  auto values = std::make_shared<std::vector<long double>>();
  if (N >= k0) values->reserve(N - k0 + 1);
  CompensatedSum<long double> sum;
  for (std::uint64_t k = k0; k <= N; ++k) {
    sum.add(fc(static_cast<long double>(k)));
    values->push_back(sum.value());
  }
  TabulatedComponent table;
  table.values = std::move(values);
  table.first_index = k0;
  table.label = "partial_sum(" + f.to_string() + ")";
  return table;
}

} // namespace eqlab::equidist
