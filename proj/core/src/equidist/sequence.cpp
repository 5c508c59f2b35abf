#include "eqlab/equidist/sequence.hpp"

#include <cmath>
#include <stdexcept>

namespace eqlab::equidist {

FloorMode parse_floor_mode(const std::string& text) {
  if (text == "none") return FloorMode::None;
  if (text == "floor") return FloorMode::Floor;
  if (text == "nearest") return FloorMode::Nearest;
  throw std::invalid_argument("floor mode must be none|floor|nearest, got '" + text + "'");
}

Precision parse_precision(const std::string& text) {
  if (text == "fast") return Precision::Fast;
  if (text == "strict") return Precision::Strict;
  throw std::invalid_argument("precision must be fast|strict, got '" + text + "'");
}

SequenceSpec SequenceSpec::of(const std::string& f_text, IndexStream stream, FloorMode floor, long double scalar) {
  SequenceSpec s;
  s.add(lefn::parse(f_text), std::move(stream), floor, scalar);
  s.id = s.describe();
  return s;
}

SequenceSpec& SequenceSpec::add(const lefn::LEFunction& f, IndexStream stream, FloorMode floor, long double scalar) {
  components.emplace_back(FunctionComponent{f, std::move(stream), floor, scalar});
  return *this;
}

SequenceSpec& SequenceSpec::add(TabulatedComponent table) {
  components.emplace_back(std::move(table));
  return *this;
}

std::string SequenceSpec::describe() const {
  std::string out;
  for (const auto& c : components) {
    if (!out.empty()) out += " + ";
    if (const auto* fn = std::get_if<FunctionComponent>(&c)) {
      std::string body = "(" + fn->f.to_string() + ")(" + fn->stream.name() + ")";
      if (fn->floor == FloorMode::Floor) body = "floor" + body;
      if (fn->floor == FloorMode::Nearest) body = "nearest" + body;
      if (fn->scalar != 1.0L) body = std::to_string(static_cast<double>(fn->scalar)) + "*" + body;
      out += body;
    } else {
      const auto& t = std::get<TabulatedComponent>(c);
      out += t.label;
    }
  }
  return out;
}

SequenceEvaluator::SequenceEvaluator(const SequenceSpec& spec, Precision precision) : precision_(precision) {
  for (const auto& c : spec.components) {
    Compiled part;
    if (const auto* fn = std::get_if<FunctionComponent>(&c)) {
      part.fn = fn;
      part.fast = lefn::CompiledFunction<long double>(fn->f);
      if (precision == Precision::Strict) part.strict = lefn::CompiledFunction<HighReal>(fn->f);
      part.floor_x = fn->f.domain_floor();
    } else {
      part.table = &std::get<TabulatedComponent>(c);
    }
    parts_.push_back(std::move(part));
  }
}

bool SequenceEvaluator::defined(std::uint64_t n) const {
  for (const auto& p : parts_) {
    if (p.fn) {
      if (p.fn->stream.needs_primes() && n > p.fn->stream.prepared()) return false;
      if (n == 0 || p.fn->stream.value(n) < p.floor_x) return false;
    } else {
      if (n < p.table->first_index || n - p.table->first_index >= p.table->values->size()) return false;
    }
  }
  return true;
}

namespace {

template <typename T>
T apply_floor(T v, FloorMode mode) {
  using std::floor;
  switch (mode) {
    case FloorMode::None: return v;
    case FloorMode::Floor: return floor(v);
    case FloorMode::Nearest: return floor(v + T(0.5));
  }
  return v;
}

template <typename T>
T frac_of(T v) {
  using std::floor;
  return v - floor(v);
}

} // namespace

long double SequenceEvaluator::value(std::uint64_t n) const {
  long double total = 0;
  for (const auto& p : parts_) {
    if (p.fn) {
      total += p.fn->scalar * apply_floor(p.fast(p.fn->stream.value(n)), p.fn->floor);
    } else {
      total += p.table->scalar * (*p.table->values)[n - p.table->first_index];
    }
  }
  return total;
}

double SequenceEvaluator::frac(std::uint64_t n) const {
  if (precision_ == Precision::Fast) {
    long double total = 0;
    for (const auto& p : parts_) {
      long double v;
      if (p.fn) {
        v = p.fn->scalar * apply_floor(p.fast(p.fn->stream.value(n)), p.fn->floor);
      } else {
        v = p.table->scalar * (*p.table->values)[n - p.table->first_index];
      }
      total += frac_of(v);
    }
    double f = static_cast<double>(frac_of(total));
    return f >= 1.0 ? 0.0 : f;
  }
  HighReal total = 0;
  for (const auto& p : parts_) {
    HighReal v;
    if (p.fn) {
      v = HighReal(p.fn->scalar) * apply_floor(p.strict(p.fn->stream.value_high(n)), p.fn->floor);
    } else {
      v = HighReal(p.table->scalar) * HighReal((*p.table->values)[n - p.table->first_index]);
    }
    total += frac_of(v);
  }
  double f = static_cast<double>(frac_of(total));
  return f >= 1.0 ? 0.0 : f;
}

void prepare_streams(SequenceSpec& spec, std::uint64_t N, const PrepareOptions& opts) {
  for (auto& c : spec.components) {
    if (auto* fn = std::get_if<FunctionComponent>(&c)) fn->stream.prepare(N, opts);
  }
}

void prepare_streams(std::vector<SequenceSpec>& coords, std::uint64_t N, const PrepareOptions& opts) {
  for (auto& s : coords) prepare_streams(s, N, opts);
}

std::uint64_t first_defined_index(const std::vector<SequenceEvaluator>& evals, std::uint64_t lower, std::uint64_t N) {
  auto ok = [&](std::uint64_t n) {
    for (const auto& e : evals) {
      if (!e.defined(n)) return false;
    }
    return true;
  };
  if (lower == 0) lower = 1;
  if (lower > N) throw std::domain_error("no index in range");
  if (ok(lower)) return lower;
  // Streams are increasing, so definedness is monotone in n: gallop, then bisect.
  std::uint64_t lo = lower, step = 1, hi = lower;
  for (;;) {
    hi = lo + step;
    if (hi > N) {
      hi = N;
      if (!ok(hi)) throw std::domain_error("sequence undefined for every index up to N");
      break;
    }
    if (ok(hi)) break;
    lo = hi;
    step *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

} // namespace eqlab::equidist
