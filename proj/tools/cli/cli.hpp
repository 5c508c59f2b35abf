#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eqlab::cli {

enum ExitCode { kUniform = 0, kError = 1, kAtomic = 2, kNonConvergent = 3, kInvariantViolated = 4 };

// Parses argv and runs one experiment. Non-CSV chatter goes to `err`.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace eqlab::cli
