#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace eqlab::cli {

// Everything that determines an experiment's output. `out` and `threads`
// are excluded from the hash: they change where and how fast, not what.
struct ExperimentConfig {
  std::string command;
  std::vector<std::string> functions;  // decide: u's; weyl/discrepancy: coordinates
  std::string weight = "natural";
  std::string stream = "naturals";
  std::string N = "1e6";
  std::string checkpoints;
  std::string h = "1";
  std::string floor = "none";
  std::string precision = "fast";
  std::string out;
  unsigned threads = 0;
  std::uint64_t seed = 1;

  // command-specific
  bool tsuji = false;
  bool with_discrepancy = false;
  std::string peak;                 // "from,to"
  std::string mode = "auto";        // discrepancy
  std::string sequence;             // benford
  std::string joint;                // benford second sequence
  int string_len = 1;
  std::string system;               // ergodic JSON path
  std::string probe;                // probe JSON path
  std::int64_t side = 500;
  double density = 0.3;
  std::vector<std::string> q;
  std::vector<std::string> u;
  std::string variant = "all";
  int instances = 1;
  std::string nmax = "1e6";
  std::string ap;                   // primes-check: "a,d"

  nlohmann::json to_json() const;
};

// "1e6", "1000000" -> 1000000; rejects non-integers.
std::uint64_t parse_count(const std::string& text);
std::vector<std::uint64_t> parse_count_list(const std::string& text);
std::vector<std::int64_t> parse_int_list(const std::string& text);

// Explicit list, or the decade ladder 10^3..N with N appended when off-ladder.
std::vector<std::uint64_t> resolve_checkpoints(const ExperimentConfig& cfg);

// "1,2,3" -> {{1},{2},{3}}; "1:0,0:1" -> {{1,0},{0,1}}.
std::vector<std::vector<int>> parse_freqs(const std::string& text, std::size_t dimension);

// Reads a JSON config ({"command": ..., "<flag>": value, ...}) into argv form.
// Parse errors carry line and column.
std::vector<std::string> args_from_config_file(const std::string& path);

// Line/column of a byte offset in `text`, 1-based.
std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset);

} // namespace eqlab::cli
