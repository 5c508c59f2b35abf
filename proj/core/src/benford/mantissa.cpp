#include "eqlab/benford/mantissa.hpp"

#include <cmath>

#include <boost/multiprecision/float128.hpp>

namespace eqlab::benford {
namespace {

void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

} // namespace

void MantissaAccumulator::add(double log10_term) { add_pair(log10_term, 0.0); }

void MantissaAccumulator::add_pair(double hi, double lo) {
  // Peel the integer part off first so the fraction never grows.
  const double ip = std::floor(hi);
  integer_ += static_cast<std::int64_t>(ip);
  hi -= ip;
  double s, e;
  two_sum(hi_, hi, s, e);
  e += lo_ + lo;
  two_sum(s, e, hi_, lo_);
  normalize();
}

void MantissaAccumulator::normalize() {
  while (hi_ + lo_ >= 1.0) {
    integer_ += 1;
    double s, e;
    two_sum(hi_, -1.0, s, e);
    two_sum(s, e + lo_, hi_, lo_);
  }
  while (hi_ + lo_ < 0.0) {
    integer_ -= 1;
    double s, e;
    two_sum(hi_, 1.0, s, e);
    two_sum(s, e + lo_, hi_, lo_);
  }
}

void StrictMantissaAccumulator::add(const HighReal& log10_term) {
  frac_ += log10_term;
  const HighReal ip = boost::multiprecision::floor(frac_);
  integer_ += static_cast<std::int64_t>(ip);
  frac_ -= ip;
}

} // namespace eqlab::benford
