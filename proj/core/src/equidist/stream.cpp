#include "eqlab/equidist/stream.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "eqlab/primes/primes.hpp"

namespace eqlab::equidist {
namespace {

std::pair<std::uint64_t, std::uint64_t> parse_pair(std::string_view s) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("expected 'a,d' in stream spec");
  std::uint64_t a = 0, d = 0;
  auto ra = std::from_chars(s.data(), s.data() + comma, a);
  auto rd = std::from_chars(s.data() + comma + 1, s.data() + s.size(), d);
  if (ra.ec != std::errc() || ra.ptr != s.data() + comma || rd.ec != std::errc() || rd.ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed stream parameters: " + std::string(s));
  }
  return {a, d};
}

template <typename T>
T newton_inverse_g(T n) {
  using std::log;
  if (!(n > 0)) throw std::domain_error("inverse_g needs n > 0");
  T y = n < T(3) ? T(1) + n / T(2) : n / log(n);
  for (int i = 0; i < 100; ++i) {
    const T ly = log(y);
    const T step = (y * ly - n) / (ly + 1);
    y -= step;
    if (y < T(1)) y = T(1);
    if (step == 0 || (step < 0 ? -step : step) <= y * std::numeric_limits<T>::epsilon()) break;
  }
  return y;
}

} // namespace

long double inverse_g(long double n) { return newton_inverse_g(n); }
HighReal inverse_g(const HighReal& n) { return newton_inverse_g(n); }

IndexStream IndexStream::ap(std::uint64_t a, std::uint64_t d) {
  if (a < 1) throw std::invalid_argument("AP needs a >= 1");
  IndexStream s(Kind::AP);
  s.a_ = a;
  s.d_ = d;
  return s;
}

IndexStream IndexStream::ap_primes(std::uint64_t a, std::uint64_t d) {
  if (a < 1 || d < 1 || d > a || std::gcd(a, d) != 1) {
    throw std::invalid_argument("AP primes need a >= 1, 1 <= d <= a, gcd(a,d) = 1");
  }
  IndexStream s(Kind::APPrimes);
  s.a_ = a;
  s.d_ = d;
  return s;
}

IndexStream IndexStream::parse(std::string_view text) {
  if (text == "naturals") return naturals();
  if (text == "primes") return primes();
  if (text == "nlogn") return nlogn();
  if (text == "invg") return inverse_g();
  if (text.rfind("ap:", 0) == 0) {
    auto [a, d] = parse_pair(text.substr(3));
    return ap(a, d);
  }
  for (std::string_view prefix : {"apprimes:"}) {
    if (text.rfind(prefix, 0) == 0) {
      auto [a, d] = parse_pair(text.substr(prefix.size()));
      return ap_primes(a, d);
    }
  }
  throw std::invalid_argument("unknown stream: " + std::string(text));
}

std::string IndexStream::name() const {
  switch (kind_) {
    case Kind::Naturals: return "naturals";
    case Kind::AP: return "ap:" + std::to_string(a_) + "," + std::to_string(d_);
    case Kind::Primes: return "primes";
    case Kind::APPrimes: return "apprimes:" + std::to_string(a_) + "," + std::to_string(d_);
    case Kind::NLogN: return "nlogn";
    case Kind::InverseG: return "invg";
  }
  return "?";
}

void IndexStream::prepare(std::uint64_t N, const PrepareOptions& opts) {
  if (!needs_primes() || prepared() >= N) return;
  primes::SieveOptions so;
  so.threads = opts.threads;
  if (kind_ == Kind::Primes) {
    table_ = std::make_shared<const std::vector<std::uint64_t>>(primes::first_primes_cached(N, so, opts.cache_path));
    return;
  }
  primes::APPrimeStream stream(a_, d_);
  auto table = std::make_shared<std::vector<std::uint64_t>>();
  table->reserve(N);
  for (std::uint64_t i = 0; i < N; ++i) table->push_back(stream.next());
  table_ = std::move(table);
}

long double IndexStream::value(std::uint64_t n) const {
  switch (kind_) {
    case Kind::Naturals: return static_cast<long double>(n);
    case Kind::AP: return static_cast<long double>(a_ * n + d_);
    case Kind::Primes:
    case Kind::APPrimes:
      if (n == 0 || n > prepared()) throw std::out_of_range("prime stream not prepared up to index " + std::to_string(n));
      return static_cast<long double>((*table_)[n - 1]);
    case Kind::NLogN: {
      const long double x = static_cast<long double>(n);
      return x * std::log(x);
    }
    case Kind::InverseG: return equidist::inverse_g(static_cast<long double>(n));
  }
  return 0;
}

HighReal IndexStream::value_high(std::uint64_t n) const {
  switch (kind_) {
    case Kind::NLogN: {
      const HighReal x(n);
      return x * boost::multiprecision::log(x);
    }
    case Kind::InverseG: return equidist::inverse_g(HighReal(n));
    case Kind::AP: return HighReal(a_) * n + d_;
    default: return HighReal(static_cast<unsigned long long>(value(n)));
  }
}

} // namespace eqlab::equidist
