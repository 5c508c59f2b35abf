#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "eqlab/equidist/checks.hpp"
#include "eqlab/equidist/weyl.hpp"
#include "eqlab/lefn/decide.hpp"
#include "eqlab/weights/scheme.hpp"

using namespace eqlab;
using namespace eqlab::equidist;

namespace {

const char* kSqrt2x = "irr(1.4142135623730950488,s2)*x";

weights::WeightScheme natural() { return weights::make_scheme("natural"); }

// Plain loop, no blocking: the oracle for weyl_sums.
std::complex<double> naive_weyl(const SequenceSpec& spec, const weights::WeightScheme& s, int h, std::uint64_t N) {
  SequenceSpec copy = spec;
  prepare_streams(copy, N);
  const SequenceEvaluator e(copy, Precision::Strict);
  std::complex<long double> acc = 0;
  for (std::uint64_t n = s.n0(); n <= N; ++n) {
    if (!e.defined(n)) continue;
    const long double ph = 2 * std::numbers::pi_v<long double> * h * e.frac(n);
    acc += s.weight(n) * std::complex<long double>(std::cos(ph), std::sin(ph));
  }
  return std::complex<double>(acc / s.normalizer(N));
}

double trend_slope(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mx = (n - 1) / 2, my = 0;
  for (double y : v) my += y / n;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += (i - mx) * (v[i] - my);
    den += (i - mx) * (i - mx);
  }
  return num / den;
}

} // namespace

TEST_SUITE("equidist") {

TEST_CASE("index streams") {
  auto p = IndexStream::parse("primes");
  p.prepare(100);
  CHECK(p.value(1) == 2);
  CHECK(p.value(100) == 541);
  auto ap = IndexStream::parse("ap:3,2");
  CHECK(ap.value(4) == 14);
  auto app = IndexStream::parse("apprimes:4,3");
  app.prepare(10);
  CHECK(app.value(3) == 11);
  CHECK(IndexStream::parse("nlogn").value(10) == doctest::Approx(10 * std::log(10.0)));
  CHECK_THROWS(IndexStream::parse("fibonacci"));
  CHECK_THROWS(IndexStream::parse("apprimes:4,6"));
  CHECK_THROWS(IndexStream::parse("approimes:4,3"));
}

TEST_CASE("inverse of x log x") {
  for (double n : {10.0, 1e3, 1e6}) {
    const long double g = inverse_g(static_cast<long double>(n));
    CHECK(std::abs(g * std::log(g) - n) < 1e-9L * n);
    const HighReal gh = inverse_g(HighReal(n));
    CHECK(static_cast<double>(boost::multiprecision::abs(gh * boost::multiprecision::log(gh) - n)) < 1e-25 * n);
  }
}

TEST_CASE("weyl sums agree with a naive strict loop") {
  const auto s = weights::make_scheme("log");
  for (const char* f : {"log(x)^(1/2)", kSqrt2x, "x^(3/2)"}) {
    for (const char* st : {"naturals", "primes"}) {
      const auto spec = SequenceSpec::of(f, IndexStream::parse(st));
      const auto rep = weyl_sums(spec, s, {1, 3}, {20000});
      CHECK(std::abs(rep.sums[0][0] - naive_weyl(spec, s, 1, 20000)) < 1e-12);
      CHECK(std::abs(rep.sums[1][0] - naive_weyl(spec, s, 3, 20000)) < 1e-12);
    }
  }
}

TEST_CASE("trivial sums") {
  // e(2 * n/2) = 1
  const auto r = weyl_sums(SequenceSpec::of("x/2"), natural(), {2}, {10, 1000, 100000});
  for (std::size_t c = 0; c < 3; ++c) CHECK(r.magnitude(0, c) == doctest::Approx(1.0).epsilon(1e-12));
  // geometric series bound
  const auto g = weyl_sums(SequenceSpec::of(kSqrt2x), natural(), {1}, {10000});
  const double bound = 2.0 / (10000 * std::abs(1.0 - std::polar(1.0, 2 * std::numbers::pi * std::numbers::sqrt2)));
  CHECK(g.magnitude(0, 0) <= bound);
  CHECK(g.s0[0] == doctest::Approx(1.0));
}

TEST_CASE("S_h never exceeds S_0 and results do not depend on threads") {
  const auto s = weights::make_scheme("log");
  const auto spec = SequenceSpec::of("log(x)^(1/2)");
  const auto cps = decade_checkpoints(3, 6);
  WeylOptions one, many;
  one.threads = 1;
  many.threads = 8;
  many.block_size = 1000;
  one.block_size = 1000;
  const auto a = weyl_sums(spec, s, {1, 2, 3, 4, 5}, cps, one);
  const auto b = weyl_sums(spec, s, {1, 2, 3, 4, 5}, cps, many);
  for (std::size_t f = 0; f < 5; ++f) {
    for (std::size_t c = 0; c < cps.size(); ++c) {
      CHECK(std::abs(a.sums[f][c] - b.sums[f][c]) <= 1e-12);
      CHECK(a.magnitude(f, c) <= a.s0[c] + 1e-12);
      CHECK(a.s0[c] == doctest::Approx(weights::normalizer_ratio(s, cps[c])).epsilon(1e-12));
    }
  }
}

TEST_CASE("multidimensional sums") {
  std::vector<SequenceSpec> coords{SequenceSpec::of(kSqrt2x), SequenceSpec::of("x^(3/2)")};
  const auto r = weyl_sums(coords, natural(), {{1, 0}, {0, 1}, {1, 1}}, {100000});
  for (std::size_t f = 0; f < 3; ++f) CHECK(r.magnitude(f, 0) < 0.05);
  // (x/2, x/2) along (1, 1) is e(n) = 1
  std::vector<SequenceSpec> half{SequenceSpec::of("x/2"), SequenceSpec::of("x/2")};
  CHECK(weyl_sums(half, natural(), {{1, 1}}, {1000}).magnitude(0, 0) == doctest::Approx(1.0));
  CHECK_THROWS(weyl_sums(coords, natural(), {{0, 0}}, {10}));
  CHECK_THROWS(weyl_sums(coords, natural(), {{1}}, {10}));
}

TEST_CASE("star discrepancy exact cases") {
  std::vector<std::pair<double, double>> pts;
  const int N = 1000;
  for (int n = 0; n < N; ++n) pts.push_back({static_cast<double>(n) / N, 1.0});
  CHECK(star_discrepancy(pts) == doctest::Approx(1.0 / N));
  std::vector<std::pair<double, double>> half(50, {0.5, 1.0});
  CHECK(star_discrepancy(half) == doctest::Approx(0.5));
  CHECK(discrepancy(SequenceSpec::of("1/2"), natural(), 1000) == doctest::Approx(0.5));

  // brute force over t on random weighted points
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<std::pair<double, double>> r;
  for (int i = 0; i < 300; ++i) r.push_back({std::floor(U(rng) * 50) / 50, U(rng)});
  double total = 0;
  for (auto& p : r) total += p.second;
  double brute = 0;
  for (const auto& cand : r) {
    for (double t : {cand.first, std::nextafter(cand.first, 2.0)}) {
      double below = 0;
      for (auto& p : r) below += p.first < t ? p.second : 0;
      brute = std::max(brute, std::abs(below / total - t));
    }
  }
  brute = std::max(brute, 0.0);
  auto copy = r;
  CHECK(star_discrepancy(copy) == doctest::Approx(brute).epsilon(1e-12));
  CHECK(std::abs(star_discrepancy_binned(r, 10000) - brute) <= 1e-4 + 1e-4 + 1.0 / 50);
}

TEST_CASE("binned mode stays within bin width of the exact value") {
  const auto spec = SequenceSpec::of(kSqrt2x);
  DiscrepancyOptions exact, binned;
  exact.mode = DiscrepancyMode::Exact;
  binned.mode = DiscrepancyMode::Binned;
  const double a = discrepancy(spec, natural(), 200000, exact), b = discrepancy(spec, natural(), 200000, binned);
  CHECK(std::abs(a - b) <= 2e-4);
}

TEST_CASE("log10 n under logarithmic weight") {
  const auto s = weights::make_scheme("log");
  const double d3 = discrepancy(SequenceSpec::of("log10(x)"), s, 1000);
  const double d6 = discrepancy(SequenceSpec::of("log10(x)"), s, 1000000);
  CHECK(d6 <= 0.15);
  CHECK(d6 < d3);
}

TEST_CASE("van der Corput differences") {
  const auto p = vdc_probe(SequenceSpec::of("irr(1.4142135623730950488,s2)*x^2"), natural(), 5, 100000);
  for (double m : p) CHECK(m <= 0.01);
  const auto third = vdc_probe(SequenceSpec::of("x/3"), natural(), 3, 10000);
  CHECK(third[2] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(third[0] == doctest::Approx(1.0).epsilon(1e-9));  // e(1/3) has modulus one

  // partial sums of log10 log k: the h-profile follows 1/|1 + 2 pi i h a| with a = log10 e,
  // up to slow drift; check the ordering and the rough size.
  const auto table = partial_sum_sequence(lefn::parse("log10(log(x))"), 200100);
  SequenceSpec u;
  u.add(table);
  const auto prof = vdc_probe(u, natural(), 3, 200000);
  CHECK(prof[0] > prof[1]);
  CHECK(prof[1] > prof[2] * 0.5);
  for (double m : prof) CHECK(m < 1.0);
}

TEST_CASE("prime substitution") {
  const auto s = weights::make_scheme("log");
  const auto rep = prime_substitution_check(lefn::parse("log(x)"), s, {10000, 100000, 1000000});
  REQUIRE(rep.rows.size() == 3);
  for (const auto& row : rep.rows) {
    const double N = static_cast<double>(row.N);
    CHECK(row.max_gap <= 2 * std::log(std::log(N)) / std::log(N));
  }
  CHECK(rep.rows[2].max_gap < rep.rows[0].max_gap);
  const auto c = prime_substitution_check(lefn::parse("7/3"), s, {1000});
  CHECK(c.rows[0].max_gap == 0.0);
  CHECK(c.rows[0].floor_density == 0.0);
  const auto r = prime_substitution_check(lefn::parse("log(x)^(1/2)"), s, {1000, 1000000});
  CHECK(r.rows[0].floor_density <= 0.05);
  CHECK(r.rows[1].floor_density <= 0.05);
  CHECK_THROWS_AS(prime_substitution_check(lefn::parse("x^(1/2)"), s, {1000}), std::domain_error);
}

TEST_CASE("slow perturbations") {
  const auto base = SequenceSpec::of(kSqrt2x);
  const auto zero = perturbation_check(base, lefn::parse("0"), natural(), 10000);
  CHECK(zero.base == zero.plus_n);
  CHECK(zero.base == zero.plus_p);
  const auto ll = perturbation_check(base, lefn::parse("log(log(x))"), weights::make_scheme("log"), 1000000);
  CHECK(ll.plus_n < 0.05);
  CHECK(ll.plus_p < 0.05);
  CHECK_THROWS_AS(perturbation_check(base, lefn::parse("x^(1/2)"), natural(), 1000), std::domain_error);
}

TEST_CASE("residue filter identity") {
  const auto z = residue_filter_sum(SequenceSpec::of("0"), natural(), 3, 1, 30000);
  CHECK(std::abs(z.direct) == doctest::Approx(1.0 / 3).epsilon(1e-3));
  CHECK(z.difference <= 1e-12);
  const auto r = residue_filter_sum(SequenceSpec::of(kSqrt2x), natural(), 4, 1, 100000);
  CHECK(std::abs(r.direct) <= 0.02);
  CHECK(r.difference <= 1e-12);
  CHECK_THROWS(residue_filter_sum(SequenceSpec::of("x"), natural(), 1, 0, 10));
}

TEST_CASE("partial sums") {
  const auto half = partial_sum_sequence(lefn::parse("1/2"), 100);
  CHECK(half.first_index == 1);
  CHECK((*half.values)[9] == doctest::Approx(5.0));
  SequenceSpec s;
  s.add(half);
  CHECK(weyl_sums(s, natural(), {1}, {100}).magnitude(0, 0) == doctest::Approx(0.0).epsilon(1e-12));  // n/2: alternates
  CHECK(weyl_sums(s, natural(), {2}, {100}).magnitude(0, 0) == doctest::Approx(1.0));
  const auto ll = partial_sum_sequence(lefn::parse("log(log(x))"), 100);
  CHECK(ll.first_index == 16);
  CHECK(lefn::decide_sum_ud(lefn::parse("log10(log(x))"), lefn::parse("x")));
}

TEST_CASE("decreasing trend of slow Weyl sums") {
  const auto s = weights::make_scheme("log");
  WeylOptions o;
  o.threads = 0;
  const auto cps = decade_checkpoints(4, 6);
  const auto r = weyl_sums(SequenceSpec::of("log(x)"), s, {1, 2}, cps, o);
  for (std::size_t f = 0; f < 2; ++f) {
    std::vector<double> v;
    for (std::size_t c = 0; c < cps.size(); ++c) v.push_back(r.magnitude(f, c));
    CHECK(v.back() < v.front());
    CHECK(trend_slope(v) < 0);
  }
}

TEST_CASE("Weyl and discrepancy agree on the uniform matrix cases") {
  const std::pair<std::string, std::string> cases[] = {
      {"log(x)^(1/4)", "log(x)"}, {"log(x)^(1/2)", "log(x)"}, {"log(x)", "log(x)"},
      {"log(log(x))^(1/2)", "log(log(x))"}, {kSqrt2x, "x"}, {"x^(3/2)", "x"},
      {"log(x) + log(log(x))", "log(x)"}};
  // The slow cases oscillate with amplitude ~ 1/log N; four decades are
  // needed before the trend shows for every one of them.
  const auto cps = decade_checkpoints(3, 7);
  for (const auto& [u, W] : cases) {
    INFO(u, " vs ", W);
    REQUIRE(lefn::decide_ud(lefn::parse(u), lefn::parse(W)).kind == lefn::UDVerdict::Kind::Uniform);
    WeylOptions o;
    o.threads = 0;
    o.with_discrepancy = true;
    const auto r = weyl_sums(SequenceSpec::of(u), weights::make_scheme(W), {1, 2, 3, 4, 5}, cps, o);
    std::vector<double> smax, disc;
    for (std::size_t c = 0; c < cps.size(); ++c) {
      double m = 0;
      for (std::size_t f = 0; f < 5; ++f) m = std::max(m, r.magnitude(f, c));
      smax.push_back(m);
      disc.push_back(r.discrepancy[c]);
    }
    CHECK(smax[3] <= 3 * disc[3] + 0.02);
    CHECK(disc.back() < disc.front());
    CHECK(trend_slope(disc) < 0);
    CHECK(smax.back() < smax.front());
    CHECK(trend_slope(smax) < 0);
  }
}

}
