#include <doctest.h>

#include <cmath>
#include <numeric>

#include "eqlab/lefn/calculus.hpp"
#include "eqlab/lefn/decide.hpp"

using namespace eqlab::lefn;
using Kind = UDVerdict::Kind;

namespace {

struct Case {
  const char* u;
  const char* W;
  Kind kind;
  double a = 0;
  std::int64_t period = 0;
};

const Case kMatrix[] = {
    {"log(x)^(1/4)", "log(x)", Kind::Uniform},
    {"log(x)^(1/2)", "log(x)", Kind::Uniform},
    {"log(x)", "log(x)", Kind::Uniform},
    {"log(log(x))^(1/2)", "log(log(x))", Kind::Uniform},
    {"irr(1.4142135623730950488,s2)*x", "x", Kind::Uniform},
    {"x^(3/2)", "x", Kind::Uniform},
    {"log(x) + log(log(x))", "log(x)", Kind::Uniform},
    {"log(x)", "x", Kind::NonConvergent, 1.0},
    {"-log(log(x))", "log(x)", Kind::NonConvergent, -1.0},
    {"log(log(log(x)))", "log(x)", Kind::NonConvergent, 0.0},
    {"x/2 + irr(1.4142135623730950488,s2)", "x", Kind::Atomic, 0, 2},
    {"5", "x", Kind::Atomic, 0, 1},
};

} // namespace

TEST_SUITE("decide") {

TEST_CASE("decision matrix") {
  for (const auto& c : kMatrix) {
    INFO(c.u, " vs ", c.W);
    const auto v = decide_ud(parse(c.u), parse(c.W));
    CHECK(v.kind == c.kind);
    if (c.kind == Kind::NonConvergent) CHECK(v.a == doctest::Approx(c.a));
    if (c.kind == Kind::Atomic) CHECK(v.period == c.period);
  }
}

TEST_CASE("growth comparison") {
  CHECK(compare_growth(parse("x"), parse("log(x)^5")).kind == GrowthOrder::Kind::Greater);
  CHECK(compare_growth(parse("log(log(x))"), parse("log(x)^(1/100)")).kind == GrowthOrder::Kind::Less);
  const auto eq = compare_growth(parse("3*x^2 + x"), parse("-x^2"));
  CHECK(eq.kind == GrowthOrder::Kind::Equal);
  CHECK(eq.ratio == doctest::Approx(-3.0));
}

TEST_CASE("a rational literal after ^ is the exponent") {
  CHECK(parse("x^2/3") == parse("x^(2/3)"));
  CHECK(decide_ud(parse("x^2/3"), parse("x")).kind == Kind::Uniform);
}

TEST_CASE("rational polynomial part") {
  const auto d = rational_poly_part(parse("1/3*x^2 + irr(1.4142135623730950488,s2)*x + 7/2 + log(x)"));
  REQUIRE(d.P.coeffs.size() == 3);
  CHECK(d.P.coeffs[2] == Rational(1, 3));
  CHECK(d.P.coeffs[1] == Rational(0));
  CHECK(d.P.coeffs[0] == Rational(7, 2));
  CHECK(d.r == parse("irr(1.4142135623730950488,s2)*x + log(x)"));
}

TEST_CASE("atomic verdicts are proper distributions on the period") {
  for (const char* u : {"x/2", "1/5*x^2", "1/6*x^2 + x/3 + 1/7", "2*x/3"}) {
    const auto v = decide_ud(parse(u), parse("x"));
    REQUIRE(v.kind == Kind::Atomic);
    Rational total = 0;
    for (const auto& w : v.weights) total += w;
    CHECK(total == Rational(1));
    CHECK(v.atoms.size() == v.weights.size());
    CHECK(std::is_sorted(v.atoms.begin(), v.atoms.end()));
    // every atom is P(n) mod 1 for some n in one period
    const auto d = rational_poly_part(parse(u));
    for (double a : v.atoms) {
      bool hit = false;
      for (std::int64_t n = 1; n <= v.period; ++n) hit |= std::abs(d.P(Rational(n)).frac().to_double() - a) < 1e-12;
      CHECK(hit);
    }
  }
  CHECK(decide_ud(parse("x/2"), parse("x")).period == 2);
  CHECK(decide_ud(parse("1/4*x^2"), parse("x")).period == 2);  // n^2/4 mod 1 has period 2
}

TEST_CASE("invalid weights are rejected") {
  CHECK_THROWS_AS(validate_weight(parse("x^2")), std::domain_error);
  CHECK_THROWS_AS(validate_weight(parse("-x")), std::domain_error);
  CHECK_THROWS_AS(validate_weight(parse("5")), std::domain_error);
  CHECK_NOTHROW(validate_weight(parse("x")));
  CHECK_NOTHROW(validate_weight(parse("log(log(x))")));
}

TEST_CASE("vector decision") {
  const auto v = decide_ud_vector({parse("log(x) + x"), parse("x")}, parse("x"));
  CHECK_FALSE(v.uniform);
  CHECK(v.combination == std::vector<std::int64_t>{1, 0});
  CHECK(decide_ud(integer_combination({parse("log(x) + x"), parse("x")}, {1, -1}), parse("x")).kind != Kind::Uniform);

  const auto ok = decide_ud_vector({parse("x^(3/2)"), parse("irr(1.4142135623730950488,s2)*x")}, parse("x"));
  CHECK(ok.uniform);
  // sqrt2 x and x: the integer combination (0, 1) is already rational
  const auto bad = decide_ud_vector({parse("irr(1.4142135623730950488,s2)*x"), parse("x/3")}, parse("x"));
  CHECK_FALSE(bad.uniform);
  // a real combination cancels sqrt2 x - sqrt2 * x
  const auto real = decide_ud_vector({parse("irr(1.4142135623730950488,s2)*x^(3/2)"), parse("x^(3/2)")}, parse("x"),
                                     Span::Real);
  CHECK_FALSE(real.uniform);
  CHECK(decide_ud_vector({parse("irr(1.4142135623730950488,s2)*x^(3/2)"), parse("x^(3/2)")}, parse("x")).uniform);
}

TEST_CASE("Tsuji sufficient condition") {
  CHECK(check_tsuji(parse("log(x)^2"), parse("log(x)")).holds());
  CHECK_FALSE(check_tsuji(parse("log(x)"), parse("x")).holds());
  CHECK_FALSE(check_tsuji(parse("x^(3/2)"), parse("x")).derivative_vanishes);
  // (iv) fails on the boundary W/w * u' = x log x / x... for log log weight
  CHECK(check_tsuji(parse("log(log(x))^2"), parse("log(log(x))")).holds());
}

TEST_CASE("partial-sum criterion") {
  CHECK(decide_sum_ud(parse("irr(0.43429448190325182765,log10e)*log(log(x))"), parse("x")));
  CHECK_FALSE(decide_sum_ud(parse("0"), parse("x")));
  CHECK_FALSE(decide_sum_ud(parse("1/2"), parse("x")));
  CHECK(decide_sum_ud(parse("x^-1/2"), parse("x")));
}

TEST_CASE("verdicts are stable under affine reindexing") {
  for (const auto& c : kMatrix) {
    if (c.kind == Kind::Atomic) continue;
    for (auto [a, d] : {std::pair{1, 0}, {2, 1}, {3, 2}}) {
      INFO(c.u, " at ", a, "x+", d);
      const auto u = substitute_affine(parse(c.u), a, d);
      CHECK(decide_ud(u, parse(c.W)).kind == c.kind);
    }
  }
}

TEST_CASE("verdicts are stable under x -> x log x for slow functions") {
  for (const char* u : {"log(x)^(1/2)", "log(x)^(1/4)"}) {
    CHECK(decide_ud(substitute_xlogx(parse(u)), parse("log(x)")).kind == Kind::Uniform);
  }
}

}
