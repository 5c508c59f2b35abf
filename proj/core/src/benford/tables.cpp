#include "eqlab/benford/tables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/float128.hpp>

#include "eqlab/benford/mantissa.hpp"
#include "eqlab/lefn/decide.hpp"
#include "eqlab/primes/primes.hpp"
#include "eqlab/util/compensated.hpp"
#include "eqlab/util/format.hpp"

namespace eqlab::benford {
namespace {

using equidist::Precision;

long double frac_of(long double v) { return v - std::floor(v); }

// Steps through n = 1, 2, ... and yields {log10 x_n}.
class Generator {
 public:
  Generator(const BenfordSequence& s, Precision p) : seq_(s), strict_(p == Precision::Strict) {
    if (seq_.kind == BenfordSequence::Kind::Custom && !seq_.custom_log10) {
      throw std::invalid_argument("custom sequence without a log10 function");
    }
  }

  // Must be called for consecutive n from 1. NaN before the start index.
  double step(std::uint64_t n) {
    std::uint64_t p = 0;
    if (seq_.needs_primes()) p = primes_.next();
    using K = BenfordSequence::Kind;
    if (n < seq_.start()) return std::numeric_limits<double>::quiet_NaN();
    switch (seq_.kind) {
      case K::Pow2: return accumulate(2, 0, 1.0, 0.0);
      case K::Factorial: return accumulate(n, 0, 1.0, 0.0);
      case K::Primorial: return accumulate(0, p, 0.0, 1.0);
      case K::Mixed: return accumulate(n, p, seq_.t1, seq_.t2);
      case K::LogProd: {
        if (strict_) {
          HighReal v = HighReal(n);
          for (int i = 0; i < seq_.j; ++i) v = boost::multiprecision::log(v);
          strict_acc_.add(boost::multiprecision::log10(v));
          return static_cast<double>(strict_acc_.fractional());
        }
        double v = static_cast<double>(n);
        for (int i = 0; i < seq_.j; ++i) v = std::log(v);
        fast_acc_.add(std::log10(v));
        return fast_acc_.fractional();
      }
      case K::PrimePower:
      case K::SimpleProduct: {
        if (strict_) {
          const HighReal v = HighReal(seq_.t1) * log10h(n) + HighReal(seq_.t2) * log10h(p);
          return static_cast<double>(v - boost::multiprecision::floor(v));
        }
        long double v = 0;
        if (seq_.t1 != 0) v += static_cast<long double>(seq_.t1) * std::log10(static_cast<long double>(n));
        if (seq_.t2 != 0) v += static_cast<long double>(seq_.t2) * std::log10(static_cast<long double>(p));
        return static_cast<double>(frac_of(v));
      }
      case K::Custom: return static_cast<double>(frac_of(seq_.custom_log10(n)));
    }
    return 0;
  }

 private:
  static HighReal log10h(std::uint64_t v) { return v == 0 ? HighReal(0) : boost::multiprecision::log10(HighReal(v)); }

  // Adds t1 log10 a + t2 log10 b (zero arguments skipped).
  double accumulate(std::uint64_t a, std::uint64_t b, double t1, double t2) {
    if (strict_) {
      HighReal term = 0;
      if (t1 != 0) term += HighReal(t1) * log10h(a);
      if (t2 != 0) term += HighReal(t2) * log10h(b);
      strict_acc_.add(term);
      return static_cast<double>(strict_acc_.fractional());
    }
    double term = 0;
    if (t1 != 0) term += t1 * std::log10(static_cast<double>(a));
    if (t2 != 0) term += t2 * std::log10(static_cast<double>(b));
    fast_acc_.add(term);
    return fast_acc_.fractional();
  }

  const BenfordSequence& seq_;
  bool strict_;
  primes::PrimeStream primes_;
  MantissaAccumulator fast_acc_;
  StrictMantissaAccumulator strict_acc_;
};

void validate_checkpoints(const std::vector<std::uint64_t>& checkpoints) {
  if (checkpoints.empty()) throw std::invalid_argument("at least one checkpoint required");
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1]) throw std::invalid_argument("checkpoints must be strictly increasing");
  }
}

double benford_share(int s) { return std::log10(1.0 + 1.0 / s); }

lefn::LEFunction log10e_times(const lefn::Rational& r, const lefn::LEFunction& f) {
  return f.scaled(lefn::Coefficient::irrational(lefn::kLog10eLabel, lefn::log10e_approx(), r));
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

} // namespace

BenfordSequence BenfordSequence::mixed(double t1, double t2) {
  if (t1 == 0 && t2 == 0) throw std::invalid_argument("mixed product with t1 = t2 = 0 is degenerate");
  BenfordSequence s = of(Kind::Mixed);
  s.t1 = t1;
  s.t2 = t2;
  return s;
}

BenfordSequence BenfordSequence::logprod(int j) {
  if (j < 1) throw std::invalid_argument("logprod needs j >= 1");
  BenfordSequence s = of(Kind::LogProd);
  s.j = j;
  return s;
}

BenfordSequence BenfordSequence::prime_power(double t2) {
  if (t2 == 0) throw std::invalid_argument("prime power with t2 = 0 is degenerate");
  BenfordSequence s = of(Kind::PrimePower);
  s.t2 = t2;
  return s;
}

BenfordSequence BenfordSequence::simple_product(double t1, double t2) {
  if (t1 == 0 && t2 == 0) throw std::invalid_argument("simple product with t1 = t2 = 0 is degenerate");
  BenfordSequence s = of(Kind::SimpleProduct);
  s.t1 = t1;
  s.t2 = t2;
  return s;
}

BenfordSequence BenfordSequence::custom(std::string name, std::function<double(std::uint64_t)> log10_of) {
  BenfordSequence s = of(Kind::Custom);
  s.custom_name = std::move(name);
  s.custom_log10 = std::move(log10_of);
  return s;
}

BenfordSequence BenfordSequence::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      args.push_back(parse_double(rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw std::invalid_argument("sequence '" + head + "' takes " + std::to_string(k) + " argument(s)");
  };
  if (head == "pow2") return need(0), pow2();
  if (head == "factorial") return need(0), factorial();
  if (head == "primorial") return need(0), primorial();
  if (head == "mixed") return need(2), mixed(args[0], args[1]);
  if (head == "logprod") {
    need(1);
    if (args[0] != std::floor(args[0])) throw std::invalid_argument("logprod order must be an integer");
    return logprod(static_cast<int>(args[0]));
  }
  if (head == "prime_power") return need(1), prime_power(args[0]);
  if (head == "simple") return need(2), simple_product(args[0], args[1]);
  throw std::invalid_argument("unknown sequence '" + text + "'");
}

std::string BenfordSequence::name() const {
  switch (kind) {
    case Kind::Pow2: return "pow2";
    case Kind::Factorial: return "factorial";
    case Kind::Primorial: return "primorial";
    case Kind::Mixed: return "mixed:" + format_double(t1) + "," + format_double(t2);
    case Kind::LogProd: return "logprod:" + std::to_string(j);
    case Kind::PrimePower: return "prime_power:" + format_double(t2);
    case Kind::SimpleProduct: return "simple:" + format_double(t1) + "," + format_double(t2);
    case Kind::Custom: return custom_name.empty() ? "custom" : custom_name;
  }
  return "?";
}

bool BenfordSequence::needs_primes() const {
  switch (kind) {
    case Kind::Primorial:
    case Kind::PrimePower: return true;
    case Kind::Mixed:
    case Kind::SimpleProduct: return t2 != 0;
    default: return false;
  }
}

std::uint64_t BenfordSequence::start() const { return kind == Kind::LogProd ? logprod_start(j) : 1; }

std::uint64_t logprod_start(int j) {
  if (j < 1) throw std::invalid_argument("logprod needs j >= 1");
  // log^(j) k > 1 iff k > e^^j (tower of j e's).
  long double tower = 1.0L;
  for (int i = 0; i < j; ++i) {
    tower = std::exp(tower);
    if (tower > 1e18L) throw std::domain_error("logprod start index out of range");
  }
  return static_cast<std::uint64_t>(std::floor(tower)) + 1;
}

int leading_digits(double frac, int len) {
  if (len < 1 || len > 3) throw std::invalid_argument("digit string length must be 1, 2 or 3");
  const int lo = len == 1 ? 1 : len == 2 ? 10 : 100;
  const int s = static_cast<int>(std::floor(std::pow(10.0, frac + len - 1)));
  return std::clamp(s, lo, 10 * lo - 1);
}

double DigitLawReport::max_deviation(std::size_t c) const {
  double m = 0;
  for (const auto& r : rows) {
    if (r.N == checkpoints.at(c)) m = std::max(m, std::abs(r.deviation));
  }
  return m;
}

std::vector<DigitRow> DigitLawReport::at(std::size_t c) const {
  std::vector<DigitRow> out;
  for (const auto& r : rows) {
    if (r.N == checkpoints.at(c)) out.push_back(r);
  }
  return out;
}

std::vector<double> mantissa_fractions(const BenfordSequence& seq, std::uint64_t N, Precision precision) {
  Generator gen(seq, precision);
  std::vector<double> out;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const double f = gen.step(n);
    if (n >= seq.start()) out.push_back(f);
  }
  return out;
}

DigitLawReport benford_table(const BenfordSequence& seq, const weights::WeightScheme& scheme,
                             const std::vector<std::uint64_t>& checkpoints, const BenfordOptions& opts) {
  validate_checkpoints(checkpoints);
  const int len = opts.string_len;
  leading_digits(0.0, len);
  const int lo = len == 1 ? 1 : len == 2 ? 10 : 100;
  const std::uint64_t first = std::max(seq.start(), scheme.n0());

  DigitLawReport rep;
  rep.sequence = seq.name();
  rep.density = scheme.spec();
  rep.string_len = len;
  rep.checkpoints = checkpoints;

  std::vector<CompensatedSum<double>> mass(9 * lo);
  CompensatedSum<double> total;
  Generator gen(seq, opts.precision);
  std::size_t c = 0;
  for (std::uint64_t n = 1; n <= checkpoints.back(); ++n) {
    const double f = gen.step(n);
    if (n >= first) {
      const double w = static_cast<double>(scheme.weight(n));
      mass[leading_digits(f, len) - lo].add(w);
      total.add(w);
    }
    if (n == checkpoints[c]) {
      const double W = static_cast<double>(scheme.normalizer(n));
      const double M = total.value();
      rep.normalizer_ratio.push_back(M / W);
      for (int s = lo; s < 10 * lo; ++s) {
        DigitRow row;
        row.N = n;
        row.digits = s;
        row.observed = mass[s - lo].value() / W;
        row.predicted = benford_share(s);
        row.deviation = (M > 0 ? mass[s - lo].value() / M : 0.0) - row.predicted;
        rep.rows.push_back(row);
      }
      ++c;
    }
  }
  return rep;
}

JointReport joint_benford(const BenfordSequence& a, const BenfordSequence& b, const weights::WeightScheme& scheme,
                          const std::vector<std::uint64_t>& checkpoints, Precision precision) {
  validate_checkpoints(checkpoints);
  const std::uint64_t first = std::max({a.start(), b.start(), scheme.n0()});
  JointReport rep;
  rep.sequence_a = a.name();
  rep.sequence_b = b.name();
  rep.density = scheme.spec();
  rep.checkpoints = checkpoints;

  std::array<std::array<CompensatedSum<double>, 9>, 9> mass{};
  CompensatedSum<double> total;
  Generator ga(a, precision), gb(b, precision);
  std::size_t c = 0;
  for (std::uint64_t n = 1; n <= checkpoints.back(); ++n) {
    const double fa = ga.step(n), fb = gb.step(n);
    if (n >= first) {
      const double w = static_cast<double>(scheme.weight(n));
      mass[leading_digits(fa, 1) - 1][leading_digits(fb, 1) - 1].add(w);
      total.add(w);
    }
    if (n == checkpoints[c]) {
      const double M = total.value();
      std::array<std::array<double, 9>, 9> obs{};
      double dev = 0;
      for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
          obs[i][j] = M > 0 ? mass[i][j].value() / M : 0.0;
          dev = std::max(dev, std::abs(obs[i][j] - benford_share(i + 1) * benford_share(j + 1)));
        }
      }
      rep.observed.push_back(obs);
      rep.max_deviation.push_back(dev);
      ++c;
    }
  }
  return rep;
}

std::string to_string(DigitClass c) {
  switch (c) {
    case DigitClass::Benford: return "Benford";
    case DigitClass::LogBenfordNotBenford: return "LogBenford-not-Benford";
    case DigitClass::LogLogBenfordNotLogBenford: return "LogLogBenford-not-LogBenford";
    case DigitClass::None: return "None";
  }
  return "?";
}

DigitClass simple_product_classifier(const lefn::Rational& t1, const lefn::Rational& t2) {
  if (t1.is_zero() && t2.is_zero()) throw std::invalid_argument("simple product with t1 = t2 = 0 is degenerate");
  using lefn::LEFunction;
  // log10(n^t1 (n log n)^t2) = (t1 + t2) log10 n + t2 log10 log n
  LEFunction u;
  if (!(t1 + t2).is_zero()) u += log10e_times(t1 + t2, LEFunction::iterated_log(1));
  if (!t2.is_zero()) u += log10e_times(t2, LEFunction::iterated_log(2));
  const LEFunction densities[] = {LEFunction::identity(), LEFunction::iterated_log(1), LEFunction::iterated_log(2)};
  const DigitClass classes[] = {DigitClass::Benford, DigitClass::LogBenfordNotBenford,
                                DigitClass::LogLogBenfordNotLogBenford};
  for (int i = 0; i < 3; ++i) {
    if (lefn::decide_ud(u, densities[i]).kind == lefn::UDVerdict::Kind::Uniform) return classes[i];
  }
  return DigitClass::None;
}

LogprodResult logprod_benford(int j, const weights::WeightScheme& scheme, const std::vector<std::uint64_t>& checkpoints,
                              const BenfordOptions& opts) {
  validate_checkpoints(checkpoints);
  LogprodResult res;
  res.j = j;
  // log10 U_n is the partial sum of log10 log^(j) k.
  res.benford = lefn::decide_sum_ud(log10e_times(1, lefn::LEFunction::iterated_log(j + 1)), scheme.W());
  long double v = static_cast<long double>(checkpoints.back());
  for (int i = 0; i < j; ++i) v = v > 1 ? std::log(v) : 0;
  res.below_resolution = v < 2;
  if (!res.below_resolution) res.table = benford_table(BenfordSequence::logprod(j), scheme, checkpoints, opts);
  return res;
}

} // namespace eqlab::benford
