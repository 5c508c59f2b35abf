// Acceptance gate: one PASS/FAIL line per criterion.
// Usage: eqlab_acceptance [--criterion k]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "eqlab/benford/tables.hpp"
#include "eqlab/equidist/checks.hpp"
#include "eqlab/equidist/weyl.hpp"
#include "eqlab/ergodic/average.hpp"
#include "eqlab/ergodic/recurrence.hpp"
#include "eqlab/lefn/decide.hpp"
#include "eqlab/primes/primes.hpp"

using namespace eqlab;

namespace {

constexpr const char* kSqrt2 = "irr(1.4142135623730950488,sqrt2)";

unsigned cores() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
  }
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// last < first and least-squares slope against log10 N negative
bool shrinking(const std::vector<std::uint64_t>& N, const std::vector<double>& v) {
  const std::size_t m = v.size();
  if (m < 2 || !(v.back() < v.front())) return false;
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += std::log10(static_cast<double>(N[i]));
    sy += v[i];
  }
  sx /= m;
  sy /= m;
  double num = 0;
  for (std::size_t i = 0; i < m; ++i) num += (std::log10(static_cast<double>(N[i])) - sx) * (v[i] - sy);
  return num < 0;
}

std::string series(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + fmt(x);
  return s;
}

// |S_h| peak for u = log10 n, w = 1: 1 / sqrt(1 + (2 pi h log10 e)^2)
double log10_limsup(int h) {
  const double c = 2 * std::numbers::pi * h * std::numbers::log10e;
  return 1 / std::sqrt(1 + c * c);
}

std::vector<std::uint64_t> trial_division_primes(std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; out.size() < count; ++n) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(n);
  }
  return out;
}

std::uint64_t plain_sieve_nth(std::uint64_t limit, std::uint64_t n) {
  std::vector<bool> composite(limit + 1, false);
  std::uint64_t count = 0;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    if (++count == n) return i;
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return 0;
}

std::int64_t isqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

Outcome c1() {
  Outcome o;
  using K = lefn::UDVerdict::Kind;
  const std::string s2 = kSqrt2;
  const struct {
    std::string u, W;
    K kind;
    double a;
    std::int64_t period;
  } cases[] = {
      {"log(x)^(1/4)", "log(x)", K::Uniform, 0, 0},
      {"log(x)^(1/2)", "log(x)", K::Uniform, 0, 0},
      {"log(x)", "log(x)", K::Uniform, 0, 0},
      {"log(log(x))^(1/2)", "log(log(x))", K::Uniform, 0, 0},
      {s2 + "*x", "x", K::Uniform, 0, 0},
      {"x^(3/2)", "x", K::Uniform, 0, 0},
      {"log(x) + log(log(x))", "log(x)", K::Uniform, 0, 0},
      {"log(x)", "x", K::NonConvergent, 1, 0},
      {"-log(log(x))", "log(x)", K::NonConvergent, -1, 0},
      {"log(log(log(x)))", "log(x)", K::NonConvergent, 0, 0},
      {"x/2 + " + s2, "x", K::Atomic, 0, 2},
      {"5", "x", K::Atomic, 0, 1},
  };
  int matched = 0;
  for (const auto& c : cases) {
    const auto v = lefn::decide_ud(lefn::parse(c.u), lefn::parse(c.W));
    bool ok = v.kind == c.kind;
    if (ok && c.kind == K::NonConvergent) ok = std::abs(v.a - c.a) < 1e-12;
    if (ok && c.kind == K::Atomic) ok = v.period == c.period;
    matched += ok;
    if (!ok) o.detail << "mismatch " << c.u << " vs " << c.W << "; ";
  }
  o.require(matched == 12, std::to_string(matched) + "/12 verdicts");
  return o;
}

Outcome c2() {
  Outcome o;
  primes::SieveOptions so;
  so.threads = cores();
  const auto r = primes::rosser_check(1'000'000, so);
  o.require(r.passed(), "rosser to 1e6");
  const auto oracle = trial_division_primes(10'000);
  const auto lib = primes::first_primes(10'000, so);
  o.require(lib == oracle, "first 1e4 primes = trial division");
  const std::uint64_t spots[] = {10'000, 100'000, 1'000'000};
  for (auto n : spots) {
    const auto expect = n == 10'000 ? oracle.back() : plain_sieve_nth(16'000'000, n);
    o.require(primes::nth_prime(n, so) == expect, "p_" + std::to_string(n) + "=" + std::to_string(expect));
  }
  return o;
}

Outcome c3() {
  Outcome o;
  const std::pair<std::uint64_t, std::uint64_t> progressions[] = {{4, 1}, {4, 3}, {3, 1}};
  for (auto [a, d] : progressions) {
    primes::APPrimeStream s(a, d);
    const double phi = static_cast<double>(primes::euler_phi(a));
    double lo = 1e9, hi = 0, r4 = 0, r6 = 0;
    for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
      const auto p = s.next();
      if (p % a != d % a) o.require(false, "residue of p_" + std::to_string(n));
      if (n < 10'000) continue;
      const double nn = static_cast<double>(n);
      const double ratio = static_cast<double>(p) / (phi * nn * std::log(nn));
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      if (n == 10'000) r4 = ratio;
      if (n == 1'000'000) r6 = ratio;
    }
    const std::string tag = "(" + std::to_string(a) + "," + std::to_string(d) + ")";
    o.require(lo >= 1.00 && hi <= 1.35, tag + " ratio in [" + fmt(lo) + "," + fmt(hi) + "]");
    o.require(r6 < r4, tag + " " + fmt(r4) + "->" + fmt(r6));
  }
  return o;
}

Outcome c4() {
  Outcome o;
  equidist::WeylOptions wo;
  wo.threads = cores();
  const auto W = weights::make_scheme("log");
  const auto cps = equidist::decade_checkpoints(4, 7);
  const auto r = equidist::weyl_sums(equidist::SequenceSpec::of("log(x)^(1/2)"), W, {1, 2, 3, 4, 5}, cps, wo);
  for (std::size_t f = 0; f < 5; ++f) {
    std::vector<double> m;
    for (std::size_t c = 0; c < cps.size(); ++c) m.push_back(r.magnitude(f, c));
    const std::string tag = "h=" + std::to_string(f + 1) + " " + series(m);
    o.require(shrinking(cps, m) && m.back() <= 0.08, tag);
  }
  const auto p = equidist::weyl_sums(equidist::SequenceSpec::of("log(x)^(1/2)", equidist::IndexStream::primes()), W,
                                     {1, 2, 3, 4, 5}, {1'000'000}, wo);
  double worst = 0;
  for (std::size_t f = 0; f < 5; ++f) worst = std::max(worst, p.magnitude(f, 0));
  o.require(worst <= 0.10, "primes max_h " + fmt(worst));
  return o;
}

Outcome c5() {
  Outcome o;
  equidist::WeylOptions wo;
  wo.threads = cores();
  wo.peak_from = 1'000'000;
  wo.peak_to = 10'000'000;
  const auto r = equidist::weyl_sums(equidist::SequenceSpec::of("log10(x)"), weights::make_scheme("natural"), {1, 2, 3},
                                     {10'000'000}, wo);
  for (int h = 1; h <= 3; ++h) {
    const double target = log10_limsup(h);
    o.require(std::abs(r.peak[h - 1] - target) <= 0.05,
              "h=" + std::to_string(h) + " peak " + fmt(r.peak[h - 1], 5) + " vs " + fmt(target, 5));
  }
  o.require(std::abs(r.peak[1] - 0.1805) <= 0.05, "h=2 vs stated 0.1805");
  return o;
}

Outcome c6() {
  Outcome o;
  equidist::WeylOptions wo;
  wo.threads = cores();
  wo.with_discrepancy = true;
  const auto r = equidist::weyl_sums(equidist::SequenceSpec::of(std::string(kSqrt2) + "*x"), weights::make_scheme("log"),
                                     {1}, {1'000'000}, wo);
  o.require(r.magnitude(0, 0) <= 0.05, "|S_1| " + fmt(r.magnitude(0, 0), 5));
  o.require(r.discrepancy[0] <= 0.05, "D* " + fmt(r.discrepancy[0], 5));
  return o;
}

Outcome c7() {
  Outcome o;
  equidist::DiscrepancyOptions d;
  d.threads = cores();
  d.mode = equidist::DiscrepancyMode::Exact;
  const auto r = equidist::perturbation_check(equidist::SequenceSpec::of(std::string(kSqrt2) + "*x"),
                                              lefn::parse("log(x)"), weights::make_scheme("natural"), 100'000, d);
  o.require(r.plus_n <= 0.02, "D*(+log n) " + fmt(r.plus_n, 5));
  o.require(r.plus_p <= 0.03, "D*(+log p_n) " + fmt(r.plus_p, 5));
  o.detail << "; base " << fmt(r.base, 5);
  return o;
}

Outcome c8() {
  Outcome o;
  const std::vector<std::uint64_t> cps{10'000, 100'000, 1'000'000};
  const auto r = equidist::prime_substitution_check(lefn::parse("log(x)"), weights::make_scheme("log"), cps);
  std::vector<double> gap, dens;
  for (const auto& row : r.rows) {
    gap.push_back(row.max_gap);
    dens.push_back(row.floor_density);
    // Rosser bracket: 0 <= log p_n - log(n log n) <= log(1 + lnln n / ln n)
    const double n = static_cast<double>(row.N) / 2;
    const double bound = 2 * std::log(std::log(n)) / std::log(n);
    o.require(row.max_gap <= bound, "gap " + fmt(row.max_gap) + " <= " + fmt(bound));
  }
  o.require(gap.back() <= 0.25 && gap.back() < gap.front(), "max gap " + series(gap));
  o.require(dens.back() <= 0.15 && shrinking(cps, dens), "floor density " + series(dens));
  return o;
}

Outcome c9() {
  Outcome o;
  const auto nat = weights::make_scheme("natural");
  // leading digit of n! by exact double arithmetic up to 170!
  const auto fr = benford::mantissa_fractions(benford::BenfordSequence::factorial(), 170);
  double fact = 1;
  bool digits_ok = true;
  for (int n = 1; n <= 170; ++n) {
    fact *= n;
    const double lead = fact / std::pow(10.0, std::floor(std::log10(fact)));
    if (static_cast<int>(lead) != benford::leading_digits(fr[n - 1], 1)) digits_ok = false;
  }
  o.require(digits_ok, "leading digits of n! <= 170");
  const auto f = benford::benford_table(benford::BenfordSequence::factorial(), nat, {100'000});
  o.require(f.max_deviation(0) <= 0.02, "n! " + fmt(f.max_deviation(0)));
  const auto lp = benford::logprod_benford(1, nat, {1'000'000});
  o.require(lp.benford, "prod log k verdict");
  o.require(!lp.below_resolution && lp.table.max_deviation(0) <= 0.02, "prod log k " + fmt(lp.table.max_deviation(0)));
  return o;
}

Outcome c10() {
  Outcome o;
  const auto r = benford::joint_benford(benford::BenfordSequence::factorial(), benford::BenfordSequence::primorial(),
                                        weights::make_scheme("log"), {1'000, 1'000'000});
  // independent recomputation of the cell-wise deviation against the product law
  double dev = 0, mass = 0;
  for (int a = 1; a <= 9; ++a) {
    for (int b = 1; b <= 9; ++b) {
      const double cell = r.observed[1][a - 1][b - 1];
      mass += cell;
      dev = std::max(dev, std::abs(cell - std::log10(1 + 1.0 / a) * std::log10(1 + 1.0 / b)));
    }
  }
  o.require(std::abs(mass - 1) < 1e-9, "cells sum to 1");
  o.require(std::abs(dev - r.max_deviation[1]) < 1e-12, "deviation recomputed");
  o.require(r.max_deviation[1] <= 0.05 && r.max_deviation[1] < r.max_deviation[0],
            "max dev " + fmt(r.max_deviation[0]) + "->" + fmt(r.max_deviation[1]));
  return o;
}

Outcome c11() {
  Outcome o;
  const auto cps = equidist::decade_checkpoints(3, 6);
  const auto nat = weights::make_scheme("natural"), lg = weights::make_scheme("log"),
             llg = weights::make_scheme("loglog");
  auto devs = [&](const benford::BenfordSequence& s, const weights::WeightScheme& w) {
    const auto t = benford::benford_table(s, w, cps);
    std::vector<double> v;
    for (std::size_t c = 0; c < cps.size(); ++c) v.push_back(t.max_deviation(c));
    return v;
  };
  const auto a = benford::BenfordSequence::simple_product(1, 1);
  o.require(benford::simple_product_classifier(1, 1) == benford::DigitClass::LogBenfordNotBenford, "(1,1) class");
  const auto a_log = devs(a, lg), a_nat = devs(a, nat);
  o.require(a_log.back() <= 0.05, "(1,1) log " + series(a_log));
  o.require(a_nat.back() >= 0.05, "(1,1) natural " + series(a_nat));

  const auto b = benford::BenfordSequence::simple_product(1, -1);
  o.require(benford::simple_product_classifier(1, -1) == benford::DigitClass::LogLogBenfordNotLogBenford, "(1,-1) class");
  const auto b_llg = devs(b, llg), b_log = devs(b, lg);
  o.require(shrinking(cps, b_llg), "(1,-1) loglog " + series(b_llg));
  o.require(*std::min_element(b_log.begin(), b_log.end()) >= 0.05, "(1,-1) log " + series(b_log));
  return o;
}

Outcome c12() {
  Outcome o;
  ergodic::DiagonalSystem sys;
  sys.dimension = 4;
  const long double r2 = 1.41421356237309504880L, r3 = 1.73205080756887729353L;
  sys.phases = {{0, 1.0L / 3, r2, 0}, {0, 0, r3, r2}};
  sys.f = {1, 1, 1, 1};
  const std::vector<lefn::LEFunction> us{lefn::parse("x^(3/2)"), lefn::parse("log(x)^2")};
  const auto W = weights::make_scheme("log");
  const auto cps = equidist::decade_checkpoints(3, 6);
  ergodic::ErgodicOptions eo;
  eo.threads = cores();
  // Pf keeps the coordinates where every phase is an integer
  const ergodic::Vector pf{1, 0, 0, 0};
  for (auto stream : {equidist::IndexStream::naturals(), equidist::IndexStream::primes()}) {
    const auto r = ergodic::weighted_average(sys, us, stream, W, cps, eo);
    o.require(!r.exploratory, stream.name() + " span condition");
    o.require(r.pf == pf, stream.name() + " Pf");
    o.require(r.distance.back() <= 0.1 && shrinking(cps, r.distance), stream.name() + " " + series(r.distance));
  }
  return o;
}

Outcome c13() {
  Outcome o;
  ergodic::ProbeOptions po;
  po.threads = cores();
  for (auto v : {ergodic::Variant::D1, ergodic::Variant::D2, ergodic::Variant::D3}) {
    int hits = 0, bad = 0;
    std::string route;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto p = ergodic::make_random_probe(500, {{0, 0, 1}}, {lefn::parse("x^(3/2)")}, 0.3, seed);
      const auto r = ergodic::recurrence_probe(p, v, po);
      route = r.route;
      if (!r.found) continue;
      // tuple (s^2, floor(t^(3/2))) with s shifted by the variant
      const auto t = static_cast<std::int64_t>(r.index);
      const std::int64_t s = t + (v == ergodic::Variant::D2 ? -1 : v == ergodic::Variant::D3 ? 1 : 0);
      const ergodic::Point tuple{s * s, isqrt(t * t * t)};
      const std::set<ergodic::Point> members(p.E.begin(), p.E.end());
      bool ok = r.verified && r.tuple == tuple && members.count(r.e1) && members.count(r.e2) &&
                r.e1[0] - r.e2[0] == tuple[0] && r.e1[1] - r.e2[1] == tuple[1];
      if (v != ergodic::Variant::D1) {
        bool prime = t >= 2;
        for (std::int64_t d = 2; d * d <= t && prime; ++d) prime = t % d != 0;
        ok = ok && prime;
      }
      ok ? ++hits : ++bad;
    }
    o.require(hits >= 18 && bad == 0, ergodic::to_string(v) + " " + std::to_string(hits) + "/20 (" + route + ")");
  }
  return o;
}

Outcome c14() {
  Outcome o;
  std::mt19937_64 rng(2024);
  const char* seqs[] = {"log(x)^2", "x^(3/2)", "irr(1.4142135623730950488,sqrt2)*x", "log(x)^(1/2)", "x^2/7"};
  const char* densities[] = {"natural", "log", "loglog"};
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t q = 2 + rng() % 11;
    const std::uint64_t t = rng() % q;
    const auto stream = rng() % 2 ? equidist::IndexStream::primes() : equidist::IndexStream::naturals();
    const auto spec = equidist::SequenceSpec::of(seqs[rng() % 5], stream);
    const auto W = weights::make_scheme(densities[rng() % 3]);
    const std::uint64_t N = 1000 + rng() % 50'000;
    const auto r = equidist::residue_filter_sum(spec, W, q, t, N);
    worst = std::max(worst, r.difference);
  }
  o.require(worst <= 1e-12, "residue filter max diff " + fmt_g(worst));

  const auto W = weights::make_scheme("log");
  const std::vector<lefn::LEFunction> us{lefn::parse("log(x)^2"), lefn::parse("x^(3/2)")};
  ergodic::DiagonalSystem sys;
  sys.dimension = 1;
  sys.phases = {{1.41421356237309504880L}, {1.0L / 3}};
  sys.f = {1};
  double diff = 0;
  for (auto stream : {equidist::IndexStream::naturals(), equidist::IndexStream::primes()}) {
    const auto cps = equidist::decade_checkpoints(3, 5);
    const auto a = ergodic::weighted_average(sys, us, stream, W, cps);
    const auto w = equidist::weyl_sums(ergodic::coordinate_sequence(sys, us, stream, 0), W, {1}, cps);
    for (std::size_t c = 0; c < cps.size(); ++c) diff = std::max(diff, std::abs(a.average[c][0] - w.sums[0][c]));
  }
  o.require(diff <= 1e-12, "D=1 ergodic vs Weyl " + fmt_g(diff));
  return o;
}

struct Criterion {
  int id;
  std::function<Outcome()> run;
  double time_limit;  // seconds, 0 = none
};

} // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, c1, 1},   {2, c2, 10},  {3, c3, 60},  {4, c4, 120}, {5, c5, 0},   {6, c6, 0},   {7, c7, 0},
      {8, c8, 0},   {9, c9, 0},   {10, c10, 180}, {11, c11, 0}, {12, c12, 0}, {13, c13, 0}, {14, c14, 0},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      wanted.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion k]...\n", argv[0]);
      return 2;
    }
  }
  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0) o.require(secs < c.time_limit, "runtime < " + fmt(c.time_limit, 0) + " s");
    std::printf("[%s] C%d %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, o.detail.str().c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
