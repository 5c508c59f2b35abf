#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cli/cli.hpp"
#include "cli/output.hpp"
#include "eqlab/benford/tables.hpp"
#include "eqlab/equidist/checks.hpp"
#include "eqlab/ergodic/average.hpp"
#include "eqlab/ergodic/recurrence.hpp"
#include "eqlab/lefn/calculus.hpp"
#include "eqlab/lefn/decide.hpp"
#include "eqlab/primes/primes.hpp"
#include "eqlab/util/format.hpp"

namespace eqlab::cli {
namespace {

using nlohmann::json;

std::string fd(double v) { return format_double(v); }

std::string u64(std::uint64_t v) { return std::to_string(v); }

equidist::PrepareOptions prepare_opts(const ExperimentConfig& cfg) {
  equidist::PrepareOptions p;
  p.threads = cfg.threads;
  return p;
}

std::vector<equidist::SequenceSpec> coordinates(const ExperimentConfig& cfg) {
  if (cfg.functions.empty()) throw std::invalid_argument("no sequence given (--seq)");
  const auto stream = equidist::IndexStream::parse(cfg.stream);
  const auto floor = equidist::parse_floor_mode(cfg.floor);
  std::vector<equidist::SequenceSpec> out;
  for (const auto& f : cfg.functions) {
    auto spec = equidist::SequenceSpec::of(f, stream, floor);
    spec.id = f;
    out.push_back(std::move(spec));
  }
  return out;
}

std::string h_label(const std::vector<int>& h) {
  std::string s;
  for (std::size_t i = 0; i < h.size(); ++i) s += (i ? ":" : "") + std::to_string(h[i]);
  return s;
}

// Phases and constants may be JSON numbers or constant grammar strings.
long double constant_of(const json& v) {
  if (v.is_number()) return v.get<long double>();
  if (v.is_string()) {
    const auto f = lefn::parse(v.get<std::string>());
    if (!f.is_constant()) throw std::invalid_argument("expected a constant, got '" + v.get<std::string>() + "'");
    return f.is_zero() ? 0.0L : static_cast<long double>(f.terms().front().coeff.value());
  }
  throw std::invalid_argument("expected a number or constant expression");
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw std::runtime_error(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

} // namespace

int cmd_decide(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.functions.empty()) throw std::invalid_argument("decide needs a function");
  const auto W = lefn::parse(cfg.weight == "natural" ? "x" : cfg.weight == "log" ? "log(x)" : cfg.weight == "loglog" ? "log(log(x))" : cfg.weight);
  lefn::validate_weight(W);
  Artifact art("decide", cfg.to_json(), {"u", "weight", "verdict", "detail"});

  int code = kUniform;
  if (cfg.functions.size() == 1) {
    const auto u = lefn::parse(cfg.functions[0]);
    const auto v = lefn::decide_ud(u, W);
    json j{{"u", u.to_string()}, {"weight", W.to_string()}, {"verdict", lefn::to_string(v.kind)},
           {"P", v.decomposition.P.to_string()}, {"r", v.decomposition.r.to_string()}};
    if (v.kind == lefn::UDVerdict::Kind::Atomic) {
      j["period"] = v.period;
      j["atoms"] = v.atoms;
      code = kAtomic;
    } else if (v.kind == lefn::UDVerdict::Kind::NonConvergent) {
      j["a"] = v.a;
      code = kNonConvergent;
    }
    if (cfg.tsuji) {
      try {
        const auto t = lefn::check_tsuji(u, W);
        j["tsuji"] = {{"i", t.tends_to_infinity}, {"ii", t.derivative_vanishes}, {"iii", t.ratio_monotone},
                      {"iv", t.weighted_ratio_diverges}, {"holds", t.holds()}};
      } catch (const std::domain_error& e) {
        j["tsuji"] = e.what();
      }
    }
    art.row({u.to_string(), W.to_string(), lefn::to_string(v.kind), lefn::describe(v)}, j);
    err << lefn::describe(v) << "\n";
  } else {
    std::vector<lefn::LEFunction> us;
    for (const auto& f : cfg.functions) us.push_back(lefn::parse(f));
    const auto v = lefn::decide_ud_vector(us, W);
    std::string detail;
    if (!v.uniform) {
      std::vector<std::string> c;
      for (auto x : v.combination) c.push_back(std::to_string(x));
      detail = "fails along (" + join(c, ",") + ")";
      code = kNonConvergent;
    }
    std::vector<std::string> names;
    for (const auto& u : us) names.push_back(u.to_string());
    const std::string verdict = v.uniform ? "Uniform" : "NotUniform";
    art.row({"[" + join(names, "; ") + "]", W.to_string(), verdict, detail},
            {{"us", names}, {"weight", W.to_string()}, {"verdict", verdict}, {"combination", v.combination}});
    err << verdict << (detail.empty() ? "" : " " + detail) << "\n";
  }
  art.emit(cfg.out, out);
  return code;
}

int cmd_weyl(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  auto coords = coordinates(cfg);
  const auto scheme = weights::make_scheme(cfg.weight);
  const auto checkpoints = resolve_checkpoints(cfg);
  const auto freqs = parse_freqs(cfg.h, coords.size());
  equidist::WeylOptions opts;
  opts.threads = cfg.threads;
  opts.precision = equidist::parse_precision(cfg.precision);
  opts.with_discrepancy = cfg.with_discrepancy;
  opts.prepare = prepare_opts(cfg);
  if (!cfg.peak.empty()) {
    const auto p = parse_count_list(cfg.peak);
    if (p.size() != 2) throw std::invalid_argument("--peak takes from,to");
    opts.peak_from = p[0];
    opts.peak_to = p[1];
  }
  const auto rep = equidist::weyl_sums(coords, scheme, freqs, checkpoints, opts);

  Artifact art("weyl", cfg.to_json(), {"sequence_id", "weight", "h_vector", "N", "abs_S", "discrepancy"});
  bool ok = true;
  for (std::size_t f = 0; f < freqs.size(); ++f) {
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      const double m = rep.magnitude(f, c);
      const double d = rep.discrepancy[c];
      if (m > rep.s0[c] + 1e-9) ok = false;
      if (!std::isnan(d) && (d < 0 || d > 1)) ok = false;
      art.row({rep.sequence_id, rep.weight, h_label(freqs[f]), u64(checkpoints[c]), fd(m), fd(d)},
              {{"sequence_id", rep.sequence_id}, {"weight", rep.weight}, {"h_vector", freqs[f]}, {"N", checkpoints[c]},
               {"abs_S", m}, {"re", rep.sums[f][c].real()}, {"im", rep.sums[f][c].imag()},
               {"discrepancy", std::isnan(d) ? json() : json(d)}, {"s0", rep.s0[c]}});
    }
  }
  if (opts.peak_to > 0) {
    json peaks = json::object();
    for (std::size_t f = 0; f < freqs.size(); ++f) peaks[h_label(freqs[f])] = rep.peak[f];
    art.meta("peak", {{"from", opts.peak_from}, {"to", opts.peak_to}, {"abs_S", peaks}});
    for (std::size_t f = 0; f < freqs.size(); ++f) err << "peak h=" << h_label(freqs[f]) << " " << fd(rep.peak[f]) << "\n";
  }
  art.meta("first_index", rep.first_index);
  art.emit(cfg.out, out);
  if (!ok) {
    err << "invariant violated: |S_h| exceeds S_0 or discrepancy outside [0,1]\n";
    return kInvariantViolated;
  }
  return 0;
}

int cmd_discrepancy(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  auto coords = coordinates(cfg);
  if (coords.size() != 1) throw std::invalid_argument("discrepancy takes a single sequence");
  const auto scheme = weights::make_scheme(cfg.weight);
  equidist::DiscrepancyOptions opts;
  opts.threads = cfg.threads;
  opts.precision = equidist::parse_precision(cfg.precision);
  opts.prepare = prepare_opts(cfg);
  if (cfg.mode == "exact") opts.mode = equidist::DiscrepancyMode::Exact;
  else if (cfg.mode == "binned") opts.mode = equidist::DiscrepancyMode::Binned;
  else if (cfg.mode != "auto") throw std::invalid_argument("--mode must be auto, exact or binned");

  Artifact art("discrepancy", cfg.to_json(), {"sequence_id", "weight", "N", "discrepancy"});
  bool ok = true;
  for (auto N : resolve_checkpoints(cfg)) {
    const double d = equidist::discrepancy(coords[0], scheme, N, opts);
    if (d < 0 || d > 1) ok = false;
    art.row({coords[0].id, scheme.spec(), u64(N), fd(d)},
            {{"sequence_id", coords[0].id}, {"weight", scheme.spec()}, {"N", N}, {"discrepancy", d}});
  }
  art.emit(cfg.out, out);
  if (!ok) {
    err << "invariant violated: discrepancy outside [0,1]\n";
    return kInvariantViolated;
  }
  return 0;
}

int cmd_benford(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.sequence.empty()) throw std::invalid_argument("benford needs --seq");
  const auto seq = benford::BenfordSequence::parse(cfg.sequence);
  const auto scheme = weights::make_scheme(cfg.weight);
  const auto checkpoints = resolve_checkpoints(cfg);
  const auto precision = equidist::parse_precision(cfg.precision);

  if (!cfg.joint.empty()) {
    const auto other = benford::BenfordSequence::parse(cfg.joint);
    const auto rep = benford::joint_benford(seq, other, scheme, checkpoints, precision);
    Artifact art("benford", cfg.to_json(), {"sequence", "density", "digit_string", "observed", "predicted", "deviation", "N"});
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      for (int a = 1; a <= 9; ++a) {
        for (int b = 1; b <= 9; ++b) {
          const double obs = rep.observed[c][a - 1][b - 1];
          const double pred = std::log10(1.0 + 1.0 / a) * std::log10(1.0 + 1.0 / b);
          const std::string cell = std::to_string(a) + "|" + std::to_string(b);
          art.row({rep.sequence_a + "|" + rep.sequence_b, rep.density, cell, fd(obs), fd(pred), fd(obs - pred),
                   u64(checkpoints[c])},
                  {{"cell", {a, b}}, {"observed", obs}, {"predicted", pred}, {"N", checkpoints[c]}});
        }
      }
      err << "N=" << checkpoints[c] << " max joint deviation " << fd(rep.max_deviation[c]) << "\n";
    }
    art.emit(cfg.out, out);
    return 0;
  }

  benford::BenfordOptions opts;
  opts.precision = precision;
  opts.string_len = cfg.string_len;
  const auto rep = benford::benford_table(seq, scheme, checkpoints, opts);
  Artifact art("benford", cfg.to_json(), {"sequence", "density", "digit_string", "observed", "predicted", "deviation", "N"});
  bool ok = true;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    double sum = 0;
    for (const auto& r : rep.at(c)) {
      sum += r.observed;
      art.row({rep.sequence, rep.density, std::to_string(r.digits), fd(r.observed), fd(r.predicted), fd(r.deviation), u64(r.N)},
              {{"digit_string", r.digits}, {"observed", r.observed}, {"predicted", r.predicted}, {"deviation", r.deviation},
               {"N", r.N}});
    }
    if (std::abs(sum - rep.normalizer_ratio[c]) > 1e-10) ok = false;
    err << "N=" << checkpoints[c] << " max deviation " << fd(rep.max_deviation(c)) << "\n";
  }
  art.meta("normalizer_ratio", rep.normalizer_ratio);
  art.emit(cfg.out, out);
  if (!ok) {
    err << "invariant violated: digit frequencies do not sum to the normalizer ratio\n";
    return kInvariantViolated;
  }
  return 0;
}

int cmd_ergodic(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.system.empty()) throw std::invalid_argument("ergodic needs --system <file.json>");
  const json j = read_json(cfg.system);
  ergodic::DiagonalSystem sys;
  sys.dimension = j.at("dimension").get<std::size_t>();
  for (const auto& row : j.at("phases")) {
    std::vector<long double> r;
    for (const auto& v : row) r.push_back(constant_of(v));
    sys.phases.push_back(std::move(r));
  }
  for (const auto& v : j.at("f")) {
    if (v.is_array()) {
      sys.f.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    } else {
      sys.f.emplace_back(v.get<double>(), 0.0);
    }
  }
  std::vector<lefn::LEFunction> us;
  for (const auto& f : j.at("functions")) us.push_back(lefn::parse(f.get<std::string>()));
  const std::string stream_text = j.value("stream", cfg.stream);
  const std::string weight_text = j.value("weight", cfg.weight);
  const auto scheme = weights::make_scheme(weight_text);
  const auto checkpoints = resolve_checkpoints(cfg);
  ergodic::ErgodicOptions opts;
  opts.threads = cfg.threads;
  opts.precision = equidist::parse_precision(cfg.precision);
  opts.prepare = prepare_opts(cfg);
  const auto rep = ergodic::weighted_average(sys, us, equidist::IndexStream::parse(stream_text), scheme, checkpoints, opts);
  if (rep.exploratory) err << "warning: " << rep.warning << "\n";

  json config = cfg.to_json();
  config["system_spec"] = j;
  Artifact art("ergodic", config, {"N", "s0", "distance", "exploratory"});
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    json avg = json::array();
    for (const auto& z : rep.average[c]) avg.push_back({z.real(), z.imag()});
    art.row({u64(checkpoints[c]), fd(rep.s0[c]), fd(rep.distance[c]), rep.exploratory ? "1" : "0"},
            {{"N", checkpoints[c]}, {"s0", rep.s0[c]}, {"distance", rep.distance[c]}, {"average", avg}});
  }
  art.meta("exploratory", rep.exploratory);
  art.emit(cfg.out, out);
  return 0;
}

int cmd_probe(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<ergodic::PatternProbe> probes;
  json config = cfg.to_json();
  if (!cfg.probe.empty()) {
    const json j = read_json(cfg.probe);
    ergodic::PatternProbe p;
    p.side = j.at("side").get<std::int64_t>();
    for (const auto& c : j.at("q")) p.q.push_back(c.get<std::vector<std::int64_t>>());
    for (const auto& f : j.at("u")) p.u.push_back(lefn::parse(f.get<std::string>()));
    if (j.contains("E")) {
      for (const auto& e : j.at("E")) p.E.push_back(e.get<ergodic::Point>());
      probes.push_back(std::move(p));
    } else {
      const double density = j.at("density").get<double>();
      const auto seed = j.value("seed", cfg.seed);
      probes.push_back(ergodic::make_random_probe(p.side, p.q, p.u, density, seed));
    }
    config["probe_spec"] = j;
  } else {
    std::vector<std::vector<std::int64_t>> q;
    for (const auto& s : cfg.q) q.push_back(parse_int_list(s));
    std::vector<lefn::LEFunction> u;
    for (const auto& s : cfg.u) u.push_back(lefn::parse(s));
    for (int i = 0; i < cfg.instances; ++i) {
      probes.push_back(ergodic::make_random_probe(cfg.side, q, u, cfg.density, cfg.seed + static_cast<std::uint64_t>(i)));
    }
  }
  std::vector<ergodic::Variant> variants;
  if (cfg.variant == "all") {
    variants = {ergodic::Variant::D1, ergodic::Variant::D2, ergodic::Variant::D3};
  } else {
    variants = {ergodic::parse_variant(cfg.variant)};
  }
  ergodic::ProbeOptions opts;
  opts.threads = cfg.threads;

  Artifact art("probe", config, {"instance", "seed", "density", "variant", "found", "index", "tuple", "verified", "route"});
  bool ok = true;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (auto v : variants) {
      const auto r = ergodic::recurrence_probe(probes[i], v, opts);
      std::vector<std::string> t;
      for (auto x : r.tuple) t.push_back(std::to_string(x));
      if (r.found && !r.verified) ok = false;
      art.row({std::to_string(i), u64(probes[i].seed), fd(probes[i].density()), ergodic::to_string(v),
               r.found ? "1" : "0", r.found ? u64(r.index) : "", "(" + join(t, ",") + ")", r.verified ? "1" : "0", r.route},
              {{"instance", i}, {"seed", probes[i].seed}, {"variant", ergodic::to_string(v)}, {"found", r.found},
               {"index", r.index}, {"tuple", r.tuple}, {"e1", r.e1}, {"e2", r.e2}, {"verified", r.verified},
               {"exhausted", r.exhausted}, {"candidates", r.candidates}, {"route", r.route}});
    }
  }
  art.emit(cfg.out, out);
  if (!ok) {
    err << "invariant violated: a reported witness failed re-verification\n";
    return kInvariantViolated;
  }
  return 0;
}

int cmd_primes_check(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  primes::SieveOptions sopts;
  sopts.threads = cfg.threads;
  const std::uint64_t nmax = parse_count(cfg.nmax);
  const auto r = primes::rosser_check(nmax, sopts);
  Artifact art("primes-check", cfg.to_json(), {"check", "n", "value", "status"});
  art.row({"rosser", u64(nmax), fd(r.min_lower_slack), r.passed() ? "PASS" : "FAIL"},
          {{"check", "rosser"}, {"n_max", nmax}, {"lower_ok", r.lower_ok}, {"upper_ok", r.upper_ok},
           {"min_lower_slack", r.min_lower_slack}, {"min_upper_slack", r.min_upper_slack}});
  if (!cfg.ap.empty()) {
    const auto ad = parse_count_list(cfg.ap);
    if (ad.size() != 2) throw std::invalid_argument("--ap takes a,d");
    for (auto n : resolve_checkpoints(cfg)) {
      const auto p = primes::nth_prime_ap(ad[0], ad[1], n, sopts);
      art.row({"ap:" + u64(ad[0]) + "," + u64(ad[1]), u64(n), fd(p.ratio), u64(p.prime)},
              {{"check", "ap"}, {"a", ad[0]}, {"d", ad[1]}, {"n", n}, {"prime", p.prime}, {"ratio", p.ratio}});
    }
  }
  err << "rosser: " << (r.passed() ? "PASS" : "FAIL") << "\n";
  art.emit(cfg.out, out);
  return r.passed() ? 0 : kInvariantViolated;
}

} // namespace eqlab::cli
