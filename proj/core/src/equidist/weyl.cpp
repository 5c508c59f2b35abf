#include "eqlab/equidist/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eqlab/util/compensated.hpp"
#include "eqlab/util/parallel.hpp"

namespace eqlab::equidist {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::complex<double> unit(double phase) {
  phase -= std::floor(phase);
  return {std::cos(kTwoPi * phase), std::sin(kTwoPi * phase)};
}

struct Block {
  std::uint64_t lo, hi;  // inclusive
  std::size_t checkpoint;
};

struct BlockSum {
  std::vector<CompensatedComplex<double>> s;
  CompensatedSum<double> mass;

  void merge(const BlockSum& o) {
    if (s.empty()) s.resize(o.s.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i].merge(o.s[i]);
    mass.merge(o.mass);
  }
};

std::vector<Block> make_blocks(std::uint64_t start, const std::vector<std::uint64_t>& checkpoints, std::size_t size) {
  std::vector<Block> blocks;
  std::uint64_t lo = start;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    const std::uint64_t end = checkpoints[c];
    while (lo <= end) {
      const std::uint64_t hi = std::min<std::uint64_t>(end, lo + size - 1);
      blocks.push_back({lo, hi, c});
      lo = hi + 1;
    }
  }
  return blocks;
}

void validate_checkpoints(const std::vector<std::uint64_t>& checkpoints) {
  if (checkpoints.empty()) throw std::invalid_argument("at least one checkpoint required");
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1]) throw std::invalid_argument("checkpoints must be strictly increasing");
  }
}

std::vector<SequenceEvaluator> make_evaluators(const std::vector<SequenceSpec>& coords, Precision p) {
  std::vector<SequenceEvaluator> evals;
  for (const auto& c : coords) evals.emplace_back(c, p);
  return evals;
}

} // namespace

std::vector<std::uint64_t> decade_checkpoints(int from_exp, int to_exp) {
  std::vector<std::uint64_t> out;
  std::uint64_t v = 1;
  for (int e = 0; e <= to_exp; ++e) {
    if (e >= from_exp) out.push_back(v);
    v *= 10;
  }
  return out;
}

WeylReport weyl_sums(std::vector<SequenceSpec> coords, const weights::WeightScheme& scheme,
                     const std::vector<std::vector<int>>& freqs, const std::vector<std::uint64_t>& checkpoints,
                     const WeylOptions& opts) {
  validate_checkpoints(checkpoints);
  if (coords.empty()) throw std::invalid_argument("sequence has no coordinates");
  for (const auto& h : freqs) {
    if (h.size() != coords.size()) throw std::invalid_argument("frequency dimension does not match the sequence");
    if (std::all_of(h.begin(), h.end(), [](int v) { return v == 0; })) throw std::invalid_argument("zero frequency");
  }
  if (opts.with_discrepancy && coords.size() != 1) throw std::invalid_argument("discrepancy needs a 1-D sequence");

  const std::uint64_t N = checkpoints.back();
  prepare_streams(coords, N, opts.prepare);
  const auto evals = make_evaluators(coords, opts.precision);
  const std::uint64_t start = first_defined_index(evals, scheme.n0(), N);
  const auto blocks = make_blocks(start, checkpoints, opts.block_size);
  const std::size_t F = freqs.size();
  const std::size_t dim = coords.size();

  std::vector<std::pair<double, double>> points;
  if (opts.with_discrepancy) points.resize(N - start + 1);

  auto run_block = [&](const Block& b, BlockSum& out, auto&& per_n) {
    out.s.assign(F, {});
    std::vector<double> fr(dim);
    for (std::uint64_t n = b.lo; n <= b.hi; ++n) {
      const double w = static_cast<double>(scheme.weight(n));
      for (std::size_t i = 0; i < dim; ++i) fr[i] = evals[i].frac(n);
      out.mass.add(w);
      for (std::size_t f = 0; f < F; ++f) {
        double phase = 0;
        for (std::size_t i = 0; i < dim; ++i) phase += freqs[f][i] * fr[i];
        out.s[f].add(w * unit(phase));
      }
      per_n(n, fr, w, out);
    }
  };

  std::vector<BlockSum> sums(blocks.size());
  parallel_for(blocks.size(), opts.threads, [&](std::size_t i) {
    run_block(blocks[i], sums[i], [&](std::uint64_t n, const std::vector<double>& fr, double w, const BlockSum&) {
      if (opts.with_discrepancy) points[n - start] = {fr[0], w};
    });
  });

  WeylReport rep;
  rep.sequence_id = coords.size() == 1 ? coords[0].id : "";
  if (rep.sequence_id.empty()) {
    for (const auto& c : coords) rep.sequence_id += (rep.sequence_id.empty() ? "" : "; ") + (c.id.empty() ? c.describe() : c.id);
  }
  rep.weight = scheme.spec();
  rep.freqs = freqs;
  rep.checkpoints = checkpoints;
  rep.first_index = start;
  rep.sums.assign(F, std::vector<std::complex<double>>(checkpoints.size()));
  rep.s0.assign(checkpoints.size(), 0.0);
  rep.discrepancy.assign(checkpoints.size(), std::numeric_limits<double>::quiet_NaN());
  rep.peak.assign(F, std::numeric_limits<double>::quiet_NaN());

  // Pairwise within each checkpoint interval, then running merge across intervals.
  BlockSum running;
  running.s.resize(F);
  std::size_t bi = 0;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    std::vector<BlockSum> group;
    while (bi < blocks.size() && blocks[bi].checkpoint == c) group.push_back(sums[bi++]);
    if (!group.empty()) {
      running.merge(pairwise_reduce(std::move(group), [](BlockSum a, const BlockSum& b) {
        a.merge(b);
        return a;
      }));
    }
    const long double W = scheme.normalizer(checkpoints[c]);
    for (std::size_t f = 0; f < F; ++f) {
      rep.sums[f][c] = std::complex<double>(static_cast<double>(running.s[f].re.value() / W),
                                            static_cast<double>(running.s[f].im.value() / W));
    }
    rep.s0[c] = static_cast<double>(running.mass.value() / W);
    if (opts.with_discrepancy && checkpoints[c] >= start) {
      std::vector<std::pair<double, double>> prefix(points.begin(), points.begin() + (checkpoints[c] - start + 1));
      rep.discrepancy[c] = prefix.size() > 10'000'000 ? star_discrepancy_binned(prefix, 10'000) : star_discrepancy(prefix);
    }
  }

  if (opts.peak_to > 0) {
    // Prefix offsets in block order, then replay blocks inside the window.
    std::vector<BlockSum> offsets(blocks.size());
    BlockSum acc;
    acc.s.resize(F);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      offsets[i] = acc;
      acc.merge(sums[i]);
    }
    std::vector<std::vector<double>> peaks(blocks.size(), std::vector<double>(F, 0.0));
    parallel_for(blocks.size(), opts.threads, [&](std::size_t i) {
      const Block& b = blocks[i];
      if (b.hi < opts.peak_from || b.lo > opts.peak_to) return;
      std::vector<std::complex<long double>> cur(F);
      for (std::size_t f = 0; f < F; ++f) cur[f] = {offsets[i].s[f].re.value(), offsets[i].s[f].im.value()};
      std::vector<double> fr(dim);
      for (std::uint64_t n = b.lo; n <= b.hi; ++n) {
        const double w = static_cast<double>(scheme.weight(n));
        for (std::size_t k = 0; k < dim; ++k) fr[k] = evals[k].frac(n);
        const bool inside = n >= opts.peak_from && n <= opts.peak_to;
        const long double W = inside ? scheme.normalizer(n) : 1.0L;
        for (std::size_t f = 0; f < F; ++f) {
          double phase = 0;
          for (std::size_t k = 0; k < dim; ++k) phase += freqs[f][k] * fr[k];
          const auto z = w * unit(phase);
          cur[f] += std::complex<long double>(z.real(), z.imag());
          if (inside) peaks[i][f] = std::max(peaks[i][f], static_cast<double>(std::abs(cur[f]) / W));
        }
      }
    });
    for (std::size_t f = 0; f < F; ++f) {
      double m = 0;
      for (const auto& p : peaks) m = std::max(m, p[f]);
      rep.peak[f] = m;
    }
  }
  return rep;
}

WeylReport weyl_sums(const SequenceSpec& spec, const weights::WeightScheme& scheme, const std::vector<int>& hs,
                     const std::vector<std::uint64_t>& checkpoints, const WeylOptions& opts) {
  std::vector<std::vector<int>> freqs;
  for (int h : hs) freqs.push_back({h});
  return weyl_sums(std::vector<SequenceSpec>{spec}, scheme, freqs, checkpoints, opts);
}

std::vector<double> vdc_probe(SequenceSpec spec, const weights::WeightScheme& scheme, int h_max, std::uint64_t N,
                              const WeylOptions& opts) {
  if (h_max < 1) throw std::invalid_argument("h_max must be >= 1");
  prepare_streams(spec, N + static_cast<std::uint64_t>(h_max), opts.prepare);
  const SequenceEvaluator eval(spec, opts.precision);
  const std::uint64_t start = first_defined_index({eval}, scheme.n0(), N);
  const std::uint64_t last = N + static_cast<std::uint64_t>(h_max);
  std::vector<double> fr(last - start + 1);
  const std::size_t bs = opts.block_size;
  const std::size_t nblocks = (fr.size() + bs - 1) / bs;
  parallel_for(nblocks, opts.threads, [&](std::size_t b) {
    const std::size_t lo = b * bs, hi = std::min(fr.size(), lo + bs);
    for (std::size_t i = lo; i < hi; ++i) fr[i] = eval.frac(start + i);
  });
  const std::size_t terms = N - start + 1;
  const std::size_t tblocks = (terms + bs - 1) / bs;
  std::vector<std::vector<CompensatedComplex<double>>> parts(tblocks, std::vector<CompensatedComplex<double>>(h_max));
  parallel_for(tblocks, opts.threads, [&](std::size_t b) {
    const std::size_t lo = b * bs, hi = std::min(terms, lo + bs);
    for (std::size_t i = lo; i < hi; ++i) {
      const double w = static_cast<double>(scheme.weight(start + i));
      for (int h = 1; h <= h_max; ++h) parts[b][h - 1].add(w * unit(fr[i + h] - fr[i]));
    }
  });
  const auto total = pairwise_reduce(std::move(parts), [](auto a, const auto& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i].merge(b[i]);
    return a;
  });
  const long double W = scheme.normalizer(N);
  std::vector<double> out;
  for (const auto& s : total) out.push_back(static_cast<double>(std::abs(s.value()) / W));
  return out;
}

} // namespace eqlab::equidist
