#pragma once

#include <complex>

namespace eqlab {

// Neumaier variant of Kahan summation: also correct when the addend is
// larger in magnitude than the running sum.
template <typename T>
struct CompensatedSum {
  T sum{};
  T carry{};

  void add(T value) {
    const T t = sum + value;
    if (abs_(sum) >= abs_(value)) {
      carry += (sum - t) + value;
    } else {
      carry += (value - t) + sum;
    }
    sum = t;
  }

  CompensatedSum& operator+=(T value) {
    add(value);
    return *this;
  }

  void merge(const CompensatedSum& other) {
    add(other.sum);
    carry += other.carry;
  }

  T value() const { return sum + carry; }

 private:
  static T abs_(T v) { return v < T{} ? -v : v; }
};

template <typename T>
struct CompensatedComplex {
  CompensatedSum<T> re;
  CompensatedSum<T> im;

  void add(std::complex<T> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  void merge(const CompensatedComplex& other) {
    re.merge(other.re);
    im.merge(other.im);
  }
  std::complex<T> value() const { return {re.value(), im.value()}; }
};

} // namespace eqlab
