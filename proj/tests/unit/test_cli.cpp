#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "cli/config.hpp"

using eqlab::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "eqlab");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string drop_timestamp(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (line.rfind("# generated", 0) != 0) kept += line + "\n";
  }
  return kept;
}

std::string write_tmp(const std::string& name, const std::string& text) {
  const std::string path = std::string(EQLAB_TEST_TMP) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("decide exit codes follow the verdict") {
  const struct {
    const char* u;
    const char* W;
    int code;
  } cases[] = {
      {"log(x)^(1/4)", "log(x)", 0},
      {"log(x)^(1/2)", "log(x)", 0},
      {"log(x)", "log(x)", 0},
      {"log(log(x))^(1/2)", "log(log(x))", 0},
      {"irr(1.4142135623730950488,s2)*x", "x", 0},
      {"x^(3/2)", "x", 0},
      {"log(x) + log(log(x))", "log(x)", 0},
      {"log(x)", "x", 3},
      {"-log(log(x))", "log(x)", 3},
      {"log(log(log(x)))", "log(x)", 3},
      {"x/2 + irr(1.4142135623730950488,s2)", "x", 2},
      {"5", "x", 2},
  };
  for (const auto& c : cases) {
    INFO(c.u, " vs ", c.W);
    const auto r = call({"decide", c.u, "--weight", c.W});
    CHECK(r.code == c.code);
    CHECK(r.out.rfind("# eqlab decide config_hash=", 0) == 0);
  }
}

TEST_CASE("bad input exits with 1") {
  CHECK(call({"decide", "log(x", "--weight", "x"}).code == 1);
  CHECK(call({"weyl", "--seq", "x", "--bogus"}).code == 1);
  CHECK(call({"nosuchcommand"}).code == 1);
  const auto r = call({"decide", "x^", "--weight", "x"});
  CHECK(r.err.find("parse error") != std::string::npos);
}

TEST_CASE("reruns are identical apart from the timestamp") {
  const std::vector<std::string> args{"weyl", "--seq", "log(x)^2", "--stream", "primes", "--weight", "log",
                                      "--N", "1e5", "--h", "1,2", "--threads", "1"};
  const auto a = call(args);
  auto threaded = args;
  threaded.back() = "4";
  const auto b = call(threaded);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(drop_timestamp(a.out) == drop_timestamp(b.out));
  CHECK(a.out.find("# generated") != std::string::npos);
}

TEST_CASE("artifacts written with --out") {
  const std::string prefix = std::string(EQLAB_TEST_TMP) + "/bf";
  const auto r = call({"benford", "--seq", "pow2", "--density", "natural", "--N", "1e4", "--out", prefix});
  REQUIRE(r.code == 0);
  std::ifstream csv(prefix + ".csv"), json(prefix + ".json");
  CHECK(csv.good());
  CHECK(json.good());
  std::string first;
  std::getline(csv, first);
  CHECK(first.rfind("# eqlab benford config_hash=", 0) == 0);
}

TEST_CASE("config files") {
  const auto good = write_tmp("good.json", R"j({"command": "decide", "functions": ["log(x)"], "weight": "x"})j");
  CHECK(call({"--config", good}).code == 3);

  const auto bad = write_tmp("bad.json", "{\n  \"command\": \"decide\",\n  \"weight\" \"x\"\n}\n");
  const auto r = call({"--config", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find(bad + ":3:14: invalid JSON") != std::string::npos);

  CHECK(eqlab::cli::line_column("ab\ncd", 4) == std::pair<std::size_t, std::size_t>{2, 2});
}

TEST_CASE("primes-check") {
  const auto r = call({"primes-check", "--nmax", "1e5"});
  CHECK(r.code == 0);
  CHECK(r.err.find("rosser: PASS") != std::string::npos);
}

TEST_CASE("probe and ergodic commands") {
  const auto p = call({"probe", "--side", "60", "--density", "0.3", "--q", "0,0,1", "--u", "x^(3/2)", "--seed", "5"});
  CHECK(p.code == 0);
  const auto sys = write_tmp("sys.json", R"j({"dimension": 2, "phases": [[0, 0.5]], "f": [[1, 0], [1, 0]],
                                             "functions": ["x^(3/2)"], "weight": "x"})j");
  const auto e = call({"ergodic", "--system", sys, "--N", "1e4"});
  CHECK(e.code == 0);
  CHECK(e.out.find("distance") != std::string::npos);
}

}
