#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqlab/lefn/function.hpp"

namespace eqlab::ergodic {

using Point = std::vector<std::int64_t>;

// E inside the box [0, side]^(m+k); q_i are integer polynomials given by
// coefficient lists (constant term first, must be 0).
struct PatternProbe {
  std::int64_t side = 0;
  std::vector<Point> E;
  std::vector<std::vector<std::int64_t>> q;
  std::vector<lefn::LEFunction> u;
  std::uint64_t seed = 0;  // recorded when E was drawn at random

  std::size_t dimension() const { return q.size() + u.size(); }
  double density() const;
  void validate() const;
};

enum class Variant { D1, D2, D3 };

Variant parse_variant(const std::string& text);
std::string to_string(Variant v);

struct ProbeOptions {
  unsigned threads = 1;
  std::uint64_t max_index = 100'000'000;  // cap on n (D1) or p (D2, D3)
  // Scan ends after this many consecutive out-of-box tuples.
  std::uint64_t out_of_range_run = 1000;
};

struct ProbeResult {
  bool found = false;
  std::uint64_t index = 0;  // n for D1, p for D2/D3
  Point tuple;
  Point e1, e2;             // e1 - e2 = tuple, both in E
  bool verified = false;
  bool exhausted = false;   // tuple range left the box before a hit
  std::uint64_t candidates = 0;
  std::string route;        // how E - E membership was decided
};

ProbeResult recurrence_probe(const PatternProbe& probe, Variant variant, const ProbeOptions& opts = {});

// The tuple (q(s), floor(u(t))) for variant-adjusted s and t; false if undefined.
bool probe_tuple(const PatternProbe& probe, Variant variant, std::uint64_t index, Point& out);

// Each box point kept independently with probability `density`, using the
// draw (rng() >> 11) * 2^-53 on mt19937_64(seed).
PatternProbe make_random_probe(std::int64_t side, std::vector<std::vector<std::int64_t>> q,
                               std::vector<lefn::LEFunction> u, double density, std::uint64_t seed);

} // namespace eqlab::ergodic
