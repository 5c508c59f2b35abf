#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "eqlab/equidist/stream.hpp"
#include "eqlab/lefn/compiled.hpp"
#include "eqlab/lefn/function.hpp"

namespace eqlab::equidist {

enum class FloorMode { None, Floor, Nearest };
enum class Precision { Fast, Strict };

FloorMode parse_floor_mode(const std::string& text);
Precision parse_precision(const std::string& text);

// scalar * apply(f(stream(n)))
struct FunctionComponent {
  lefn::LEFunction f;
  IndexStream stream = IndexStream::naturals();
  FloorMode floor = FloorMode::None;
  long double scalar = 1.0L;
};

// scalar * values[n - first_index]; used for partial sums.
struct TabulatedComponent {
  std::shared_ptr<const std::vector<long double>> values;
  std::uint64_t first_index = 1;
  long double scalar = 1.0L;
  std::string label = "table";
};

using Component = std::variant<FunctionComponent, TabulatedComponent>;

// x_n = sum of components, all sharing the outer index n.
struct SequenceSpec {
  std::string id;
  std::vector<Component> components;

  static SequenceSpec of(const std::string& f_text, IndexStream stream = IndexStream::naturals(),
                         FloorMode floor = FloorMode::None, long double scalar = 1.0L);
  SequenceSpec& add(const lefn::LEFunction& f, IndexStream stream = IndexStream::naturals(),
                    FloorMode floor = FloorMode::None, long double scalar = 1.0L);
  SequenceSpec& add(TabulatedComponent table);
  std::string describe() const;
};

// Compiled evaluator for one coordinate. Construct after the spec's prime
// streams are prepared (prepare_streams).
class SequenceEvaluator {
 public:
  SequenceEvaluator(const SequenceSpec& spec, Precision precision);

  // {x_n} in [0, 1).
  double frac(std::uint64_t n) const;
  // x_n itself (fast path precision); used by tests and floor checks.
  long double value(std::uint64_t n) const;
  // True when every component is defined at n.
  bool defined(std::uint64_t n) const;

 private:
  struct Compiled {
    const FunctionComponent* fn = nullptr;
    const TabulatedComponent* table = nullptr;
    lefn::CompiledFunction<long double> fast;
    lefn::CompiledFunction<HighReal> strict;
    long double floor_x = 1.0L;
  };
  std::vector<Compiled> parts_;
  Precision precision_;
};

// Prepares every prime-backed stream in the specs for indices <= N.
void prepare_streams(std::vector<SequenceSpec>& coords, std::uint64_t N, const PrepareOptions& opts = {});
void prepare_streams(SequenceSpec& spec, std::uint64_t N, const PrepareOptions& opts = {});

// Smallest n >= lower with every coordinate defined at n; throws if none <= N.
std::uint64_t first_defined_index(const std::vector<SequenceEvaluator>& evals, std::uint64_t lower, std::uint64_t N);

} // namespace eqlab::equidist
