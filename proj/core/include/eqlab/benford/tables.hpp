#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eqlab/equidist/sequence.hpp"
#include "eqlab/lefn/rational.hpp"
#include "eqlab/weights/scheme.hpp"

namespace eqlab::benford {

// Products are accumulated term by term; simple products and custom streams
// give log10 x_n directly.
struct BenfordSequence {
  enum class Kind { Pow2, Factorial, Primorial, Mixed, LogProd, PrimePower, SimpleProduct, Custom };

  Kind kind = Kind::Factorial;
  double t1 = 0, t2 = 0;
  int j = 0;
  std::string custom_name;
  std::function<double(std::uint64_t)> custom_log10;  // n -> log10 x_n (mod 1 suffices)

  static BenfordSequence of(Kind k) {
    BenfordSequence s;
    s.kind = k;
    return s;
  }
  static BenfordSequence pow2() { return of(Kind::Pow2); }
  static BenfordSequence factorial() { return of(Kind::Factorial); }
  static BenfordSequence primorial() { return of(Kind::Primorial); }
  static BenfordSequence mixed(double t1, double t2);          // prod k^t1 p_k^t2
  static BenfordSequence logprod(int j);                       // prod_{k >= A_j} log^(j) k
  static BenfordSequence prime_power(double t2);               // p_n^t2
  static BenfordSequence simple_product(double t1, double t2); // n^t1 p_n^t2
  static BenfordSequence custom(std::string name, std::function<double(std::uint64_t)> log10_of);

  // "pow2", "factorial", "primorial", "mixed:t1,t2", "logprod:j",
  // "prime_power:t2", "simple:t1,t2".
  static BenfordSequence parse(const std::string& text);

  std::string name() const;
  bool needs_primes() const;
  std::uint64_t start() const;  // first index of the sequence
};

// Smallest integer k with log^(j) k > 1.
std::uint64_t logprod_start(int j);

struct BenfordOptions {
  equidist::Precision precision = equidist::Precision::Fast;
  int string_len = 1;
};

struct DigitRow {
  std::uint64_t N = 0;
  int digits = 0;        // leading digit string S
  double observed = 0;   // weighted mass of S over W(N)
  double predicted = 0;  // log10(1 + 1/S)
  double deviation = 0;  // mass share of S minus predicted
};

struct DigitLawReport {
  std::string sequence;
  std::string density;
  int string_len = 1;
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> normalizer_ratio;  // weighted mass over W(N), per checkpoint
  std::vector<DigitRow> rows;            // grouped by checkpoint, digits ascending

  // max |deviation| at checkpoint c.
  double max_deviation(std::size_t c) const;
  std::vector<DigitRow> at(std::size_t c) const;
};

// Leading digit string of 10^frac, frac in [0, 1).
int leading_digits(double frac, int len);

// Fractional parts of log10 x_n for n = start..N, in order.
std::vector<double> mantissa_fractions(const BenfordSequence& seq, std::uint64_t N,
                                       equidist::Precision precision = equidist::Precision::Fast);

DigitLawReport benford_table(const BenfordSequence& seq, const weights::WeightScheme& scheme,
                             const std::vector<std::uint64_t>& checkpoints, const BenfordOptions& opts = {});

struct JointReport {
  std::string sequence_a, sequence_b, density;
  std::vector<std::uint64_t> checkpoints;
  std::vector<std::array<std::array<double, 9>, 9>> observed;  // mass share per (a, b)
  std::vector<double> max_deviation;                           // vs log10(1+1/a) log10(1+1/b)
};

JointReport joint_benford(const BenfordSequence& a, const BenfordSequence& b, const weights::WeightScheme& scheme,
                          const std::vector<std::uint64_t>& checkpoints,
                          equidist::Precision precision = equidist::Precision::Fast);

enum class DigitClass { Benford, LogBenfordNotBenford, LogLogBenfordNotLogBenford, None };

std::string to_string(DigitClass c);

// x_n = n^t1 p_n^t2 via the prime substitution p_n ~ n log n.
DigitClass simple_product_classifier(const lefn::Rational& t1, const lefn::Rational& t2);

struct LogprodResult {
  int j = 0;
  bool benford = false;            // symbolic verdict
  bool below_resolution = false;   // log^(j) N < 2: table not computed
  DigitLawReport table;
};

LogprodResult logprod_benford(int j, const weights::WeightScheme& scheme, const std::vector<std::uint64_t>& checkpoints,
                              const BenfordOptions& opts = {});

} // namespace eqlab::benford
