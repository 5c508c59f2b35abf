#include "eqlab/ergodic/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include <fftw3.h>

#include "eqlab/lefn/compiled.hpp"
#include "eqlab/primes/primes.hpp"
#include "eqlab/util/parallel.hpp"

namespace eqlab::ergodic {
namespace {

constexpr std::size_t kPairwiseLimit = 4'000'000;   // |E|^2 for the difference hash set
constexpr std::size_t kFftCellLimit = 16'000'000;  // padded grid cells for autocorrelation

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : p) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using PointSet = std::unordered_set<Point, PointHash>;

bool eval_poly(const std::vector<std::int64_t>& c, std::int64_t x, std::int64_t& out) {
  __int128 acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * x + c[i];
    if (acc > INT64_MAX || acc < INT64_MIN) return false;
  }
  out = static_cast<std::int64_t>(acc);
  return true;
}

// E - E membership, decided by one of three routes.
class DifferenceOracle {
 public:
  DifferenceOracle(const PatternProbe& probe) : side_(probe.side), dim_(probe.dimension()) {
    for (const auto& e : probe.E) set_.insert(e);
    const std::size_t n = set_.size();
    std::size_t cells = 1;
    for (std::size_t i = 0; i < dim_; ++i) cells = cells > kFftCellLimit ? cells : cells * static_cast<std::size_t>(2 * side_ + 2);
    if (n * n <= kPairwiseLimit) {
      route_ = "pairwise-hash";
      for (const auto& a : set_) {
        for (const auto& b : set_) {
          Point d(dim_);
          for (std::size_t i = 0; i < dim_; ++i) d[i] = a[i] - b[i];
          diffs_.insert(std::move(d));
        }
      }
    } else if (cells <= kFftCellLimit) {
      route_ = "fft-autocorrelation";
      build_autocorrelation();
    } else {
      route_ = "scan";
    }
  }

  const std::string& route() const { return route_; }

  bool contains(const Point& t) const {
    for (auto v : t) {
      if (v < -side_ || v > side_) return false;
    }
    if (route_ == "pairwise-hash") return diffs_.count(t) > 0;
    if (route_ == "fft-autocorrelation") return bitmap_[index_of(t)];
    Point e1, e2;
    return find_pair(t, e1, e2);
  }

  // Explicit e1, e2 in E with e1 - e2 = t, by direct search.
  bool find_pair(const Point& t, Point& e1, Point& e2) const {
    Point cand(dim_);
    for (const auto& e : set_) {
      for (std::size_t i = 0; i < dim_; ++i) cand[i] = e[i] + t[i];
      if (set_.count(cand)) {
        e1 = cand;
        e2 = e;
        return true;
      }
    }
    return false;
  }

 private:
  std::size_t index_of(const Point& t) const {
    // Cyclic layout on the padded grid; negative shifts wrap.
    const std::int64_t L = 2 * side_ + 2;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dim_; ++i) idx = idx * static_cast<std::size_t>(L) + static_cast<std::size_t>((t[i] % L + L) % L);
    return idx;
  }

  void build_autocorrelation() {
    const int L = static_cast<int>(2 * side_ + 2);
    std::vector<int> dims(dim_, L);
    std::size_t total = 1, complex_total = 1;
    for (std::size_t i = 0; i < dim_; ++i) {
      total *= static_cast<std::size_t>(L);
      complex_total *= i + 1 == dim_ ? static_cast<std::size_t>(L / 2 + 1) : static_cast<std::size_t>(L);
    }
    double* grid = fftw_alloc_real(total);
    fftw_complex* spec = fftw_alloc_complex(complex_total);
    if (!grid || !spec) throw std::bad_alloc();
    const int rank = static_cast<int>(dim_);
    fftw_plan fwd = fftw_plan_dft_r2c(rank, dims.data(), grid, spec, FFTW_ESTIMATE);
    fftw_plan inv = fftw_plan_dft_c2r(rank, dims.data(), spec, grid, FFTW_ESTIMATE);
    std::fill(grid, grid + total, 0.0);
    for (const auto& e : set_) grid[index_of(e)] = 1.0;
    fftw_execute(fwd);
    for (std::size_t i = 0; i < complex_total; ++i) {
      spec[i][0] = spec[i][0] * spec[i][0] + spec[i][1] * spec[i][1];
      spec[i][1] = 0.0;
    }
    fftw_execute(inv);
    // grid[t] = total * #{e : e + t in E}, up to rounding; counts are integers.
    bitmap_.assign(total, false);
    const double scale = static_cast<double>(total);
    for (std::size_t i = 0; i < total; ++i) bitmap_[i] = grid[i] / scale > 0.5;
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(grid);
    fftw_free(spec);
  }

  std::int64_t side_;
  std::size_t dim_;
  PointSet set_;
  PointSet diffs_;
  std::vector<bool> bitmap_;
  std::string route_;
};

} // namespace

double PatternProbe::density() const {
  const double cells = std::pow(static_cast<double>(side + 1), static_cast<double>(dimension()));
  return static_cast<double>(E.size()) / cells;
}

void PatternProbe::validate() const {
  if (side < 10) throw std::invalid_argument("probe box side must be >= 10");
  if (dimension() == 0) throw std::invalid_argument("probe needs at least one generator");
  if (E.empty()) throw std::invalid_argument("probe set E is empty");
  for (const auto& c : q) {
    if (c.empty() || c[0] != 0) throw std::invalid_argument("polynomial generators must vanish at 0");
  }
  for (const auto& e : E) {
    if (e.size() != dimension()) throw std::invalid_argument("point of E has the wrong dimension");
    for (auto v : e) {
      if (v < 0 || v > side) throw std::invalid_argument("point of E lies outside the box");
    }
  }
}

Variant parse_variant(const std::string& text) {
  if (text == "D1" || text == "d1") return Variant::D1;
  if (text == "D2" || text == "d2") return Variant::D2;
  if (text == "D3" || text == "d3") return Variant::D3;
  throw std::invalid_argument("unknown variant '" + text + "' (D1, D2, D3)");
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::D1: return "D1";
    case Variant::D2: return "D2";
    case Variant::D3: return "D3";
  }
  return "?";
}

namespace {

bool tuple_of(const PatternProbe& probe, const std::vector<lefn::CompiledFunction<long double>>& us, Variant variant,
              std::uint64_t index, Point& out) {
  const auto s = static_cast<std::int64_t>(index) + (variant == Variant::D2 ? -1 : variant == Variant::D3 ? 1 : 0);
  out.assign(probe.dimension(), 0);
  std::size_t k = 0;
  for (const auto& c : probe.q) {
    if (!eval_poly(c, s, out[k++])) return false;
  }
  for (const auto& fc : us) {
    const long double x = static_cast<long double>(index);
    if (x < fc.domain_floor()) return false;
    const long double v = std::floor(fc(x));
    if (!(std::fabs(v) < 9.2e18L)) return false;
    out[k++] = static_cast<std::int64_t>(v);
  }
  return true;
}

std::vector<lefn::CompiledFunction<long double>> compile_all(const PatternProbe& probe) {
  std::vector<lefn::CompiledFunction<long double>> out;
  for (const auto& f : probe.u) out.emplace_back(f);
  return out;
}

} // namespace

bool probe_tuple(const PatternProbe& probe, Variant variant, std::uint64_t index, Point& out) {
  return tuple_of(probe, compile_all(probe), variant, index, out);
}

ProbeResult recurrence_probe(const PatternProbe& probe, Variant variant, const ProbeOptions& opts) {
  probe.validate();
  ProbeResult res;
  const auto us = compile_all(probe);

  // Candidate indices in scan order, up to the end of the box range.
  std::vector<std::uint64_t> indices;
  std::vector<Point> tuples;
  {
    primes::PrimeStream primes;
    std::uint64_t run = 0;
    Point t;
    for (;;) {
      std::uint64_t idx;
      if (variant == Variant::D1) {
        idx = res.candidates + 1;
      } else {
        idx = primes.next();
      }
      if (idx > opts.max_index) break;
      ++res.candidates;
      const bool ok = tuple_of(probe, us, variant, idx, t);
      const bool in_box = ok && std::all_of(t.begin(), t.end(), [&](std::int64_t v) { return v >= -probe.side && v <= probe.side; });
      const bool zero = ok && std::all_of(t.begin(), t.end(), [](std::int64_t v) { return v == 0; });
      if (in_box) {
        run = 0;
        if (!zero) {
          indices.push_back(idx);
          tuples.push_back(t);
        }
      } else if (ok && ++run >= opts.out_of_range_run) {
        break;
      }
    }
  }

  const DifferenceOracle oracle(probe);
  res.route = oracle.route();

  const std::size_t block = 256;
  const std::size_t nblocks = (tuples.size() + block - 1) / block;
  std::vector<std::size_t> first_hit(nblocks, std::numeric_limits<std::size_t>::max());
  parallel_for(nblocks, opts.threads, [&](std::size_t b) {
    const std::size_t hi = std::min(tuples.size(), (b + 1) * block);
    for (std::size_t i = b * block; i < hi; ++i) {
      if (oracle.contains(tuples[i])) {
        first_hit[b] = i;
        return;
      }
    }
  });
  const auto it = std::find_if(first_hit.begin(), first_hit.end(),
                               [](std::size_t v) { return v != std::numeric_limits<std::size_t>::max(); });
  if (it == first_hit.end()) {
    res.exhausted = true;
    return res;
  }
  res.found = true;
  res.index = indices[*it];
  // Re-derive the tuple from scratch and search the pair explicitly.
  Point t;
  res.verified = probe_tuple(probe, variant, res.index, t) && t == tuples[*it] && oracle.find_pair(t, res.e1, res.e2);
  res.tuple = t;
  return res;
}

PatternProbe make_random_probe(std::int64_t side, std::vector<std::vector<std::int64_t>> q,
                               std::vector<lefn::LEFunction> u, double density, std::uint64_t seed) {
  if (!(density > 0 && density <= 1)) throw std::invalid_argument("density must lie in (0, 1]");
  PatternProbe p;
  p.side = side;
  p.q = std::move(q);
  p.u = std::move(u);
  p.seed = seed;
  const std::size_t d = p.dimension();
  if (d == 0) throw std::invalid_argument("probe needs at least one generator");
  std::mt19937_64 rng(seed);
  Point cur(d, 0);
  for (;;) {
    const double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (draw < density) p.E.push_back(cur);
    std::size_t i = d;
    while (i-- > 0) {
      if (++cur[i] <= side) break;
      cur[i] = 0;
      if (i == 0) return p;
    }
  }
}

} // namespace eqlab::ergodic
