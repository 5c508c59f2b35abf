#include "cli/cli.hpp"

#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "eqlab/lefn/function.hpp"

namespace eqlab::cli {
namespace {

void common(CLI::App* sub, ExperimentConfig& cfg, bool with_sequence) {
  sub->add_option("--weight", cfg.weight, "W(x) in the grammar, or natural | log | loglog");
  sub->add_option("--N", cfg.N, "Largest index");
  sub->add_option("--checkpoints", cfg.checkpoints, "Comma-separated checkpoints (default: decades up to N)");
  sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  sub->add_option("--precision", cfg.precision, "fast | strict");
  sub->add_option("--out", cfg.out, "Output prefix for <out>.csv and <out>.json (default: CSV on stdout)");
  sub->add_option("--seed", cfg.seed, "RNG seed");
  if (with_sequence) {
    sub->add_option("--seq", cfg.functions, "Sequence function; repeat for k-D")->required();
    sub->add_option("--stream", cfg.stream, "naturals | ap:a,d | primes | apprimes:a,d | nlogn | invg");
    sub->add_option("--floor", cfg.floor, "none | floor | nearest");
  }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  // A --config file replaces the whole command line.
  if (args.size() == 3 && args[1] == "--config") {
    try {
      return run(args_from_config_file(args[2]), out, err);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kError;
    }
  }

  ExperimentConfig cfg;
  CLI::App app{"Weighted equidistribution lab"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  app.add_option("--config", "JSON experiment config (replaces all other arguments)");

  auto* decide = app.add_subcommand("decide", "Decide w(n)-uniform distribution of u(n) symbolically");
  decide->add_option("u", cfg.functions, "u(x); several functions decide the vector (u_1, ..., u_k)")->required();
  decide->add_option("--weight", cfg.weight, "W(x)");
  decide->add_flag("--tsuji", cfg.tsuji, "Also report the Tsuji sufficient condition");
  decide->add_option("--out", cfg.out, "Output prefix");

  auto* weyl = app.add_subcommand("weyl", "Weighted Weyl sums");
  common(weyl, cfg, true);
  weyl->add_option("--h", cfg.h, "Frequencies: 1,2,3 or 1:0,0:1 for k-D");
  weyl->add_flag("--discrepancy", cfg.with_discrepancy, "Also compute D* per checkpoint (1-D)");
  weyl->add_option("--peak", cfg.peak, "Running peak window from,to");

  auto* disc = app.add_subcommand("discrepancy", "Weighted star discrepancy");
  common(disc, cfg, true);
  disc->add_option("--mode", cfg.mode, "auto | exact | binned");

  auto* ben = app.add_subcommand("benford", "Leading-digit laws");
  common(ben, cfg, false);
  ben->add_option("--seq", cfg.sequence, "pow2 | factorial | primorial | mixed:t1,t2 | logprod:j | prime_power:t2 | simple:t1,t2")
      ->required();
  ben->add_option("--density", cfg.weight, "natural | log | loglog (alias of --weight)");
  ben->add_option("--len", cfg.string_len, "Digit string length (1-3)");
  ben->add_option("--joint", cfg.joint, "Second sequence for a 9x9 joint first-digit table");

  auto* erg = app.add_subcommand("ergodic", "Weighted ergodic averages for a diagonal system");
  common(erg, cfg, false);
  erg->add_option("--system", cfg.system, "System JSON {dimension, phases, f, functions, stream, weight}")->required();
  erg->add_option("--stream", cfg.stream, "naturals | primes (when the system file has none)");

  auto* probe = app.add_subcommand("probe", "Recurrence-set probes");
  probe->add_option("--probe", cfg.probe, "Probe JSON {side, q, u, E | density, seed}");
  probe->add_option("--side", cfg.side, "Box side");
  probe->add_option("--density", cfg.density, "Density of the random E");
  probe->add_option("--q", cfg.q, "Polynomial coefficients, constant first (e.g. 0,0,1); repeatable");
  probe->add_option("--u", cfg.u, "Floor function u(x); repeatable");
  probe->add_option("--variant", cfg.variant, "D1 | D2 | D3 | all");
  probe->add_option("--instances", cfg.instances, "Random instances (seeds seed, seed+1, ...)");
  probe->add_option("--seed", cfg.seed, "RNG seed");
  probe->add_option("--threads", cfg.threads, "Worker threads");
  probe->add_option("--out", cfg.out, "Output prefix");

  auto* pc = app.add_subcommand("primes-check", "Rosser bounds and AP prime ratios");
  pc->alias("primes_check");
  pc->add_option("--nmax", cfg.nmax, "Check Rosser bounds for n <= nmax");
  pc->add_option("--ap", cfg.ap, "Also report p_n^{a,d} / (phi(a) n ln n) at the checkpoints: a,d");
  pc->add_option("--N", cfg.N, "Largest AP index");
  pc->add_option("--checkpoints", cfg.checkpoints, "AP checkpoints");
  pc->add_option("--threads", cfg.threads, "Worker threads");
  pc->add_option("--out", cfg.out, "Output prefix");

  // Expressions like "-log(log(x))" would read as short flags; a leading
  // space keeps them positional and is trimmed again below.
  std::vector<std::string> shielded(args);
  for (std::size_t i = 1; i < shielded.size(); ++i) {
    auto& a = shielded[i];
    if (a.size() > 1 && a[0] == '-' && a[1] != '-') a.insert(a.begin(), ' ');
  }
  std::vector<const char*> argv;
  for (const auto& a : shielded) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kError;
  }

  for (auto* list : {&cfg.functions, &cfg.u}) {
    for (auto& f : *list) {
      if (!f.empty() && f.front() == ' ') f.erase(0, 1);
    }
  }

  try {
    auto* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (sub == decide) return cmd_decide(cfg, out, err);
    if (sub == weyl) return cmd_weyl(cfg, out, err);
    if (sub == disc) return cmd_discrepancy(cfg, out, err);
    if (sub == ben) return cmd_benford(cfg, out, err);
    if (sub == erg) return cmd_ergodic(cfg, out, err);
    if (sub == probe) return cmd_probe(cfg, out, err);
    return cmd_primes_check(cfg, out, err);
  } catch (const lefn::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kError;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

} // namespace eqlab::cli
