#pragma once

#include <iosfwd>

#include "cli/config.hpp"

namespace eqlab::cli {

int cmd_decide(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_weyl(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_discrepancy(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_benford(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_ergodic(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_probe(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_primes_check(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace eqlab::cli
