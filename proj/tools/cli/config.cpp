#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eqlab::cli {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

} // namespace

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["functions"] = functions;
  j["weight"] = weight;
  j["stream"] = stream;
  j["N"] = N;
  j["checkpoints"] = checkpoints;
  j["h"] = h;
  j["floor"] = floor;
  j["precision"] = precision;
  j["seed"] = seed;
  j["tsuji"] = tsuji;
  j["with_discrepancy"] = with_discrepancy;
  j["peak"] = peak;
  j["mode"] = mode;
  j["sequence"] = sequence;
  j["joint"] = joint;
  j["string_len"] = string_len;
  j["system"] = system;
  j["probe"] = probe;
  j["side"] = side;
  j["density"] = density;
  j["q"] = q;
  j["u"] = u;
  j["variant"] = variant;
  j["instances"] = instances;
  j["nmax"] = nmax;
  j["ap"] = ap;
  return j;
}

std::uint64_t parse_count(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a count, got '" + text + "'");
  }
  if (used != t.size() || v < 0 || v != std::floor(v) || v > 1e19) {
    throw std::invalid_argument("expected a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<std::uint64_t> parse_count_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_count(part));
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(text, ',')) {
    const std::string t = trim(part);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(t, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != t.size()) throw std::invalid_argument("expected an integer, got '" + part + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::uint64_t> resolve_checkpoints(const ExperimentConfig& cfg) {
  if (!cfg.checkpoints.empty()) return parse_count_list(cfg.checkpoints);
  const std::uint64_t N = parse_count(cfg.N);
  if (N == 0) throw std::invalid_argument("N must be positive");
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 1000; v <= N; v *= 10) out.push_back(v);
  if (out.empty() || out.back() != N) out.push_back(N);
  return out;
}

std::vector<std::vector<int>> parse_freqs(const std::string& text, std::size_t dimension) {
  std::vector<std::vector<int>> out;
  for (const auto& vec : split(text, ',')) {
    std::vector<int> h;
    for (const auto& c : split(vec, ':')) {
      const std::string t = trim(c);
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(t, &used);
      } catch (const std::exception&) {
        used = std::string::npos;
      }
      if (used != t.size()) throw std::invalid_argument("bad frequency component '" + c + "'");
      h.push_back(v);
    }
    if (h.size() != dimension) {
      throw std::invalid_argument("frequency '" + vec + "' has " + std::to_string(h.size()) + " components, expected " +
                                  std::to_string(dimension));
    }
    out.push_back(std::move(h));
  }
  return out;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::vector<std::string> args_from_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte is one past the offending character
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw std::runtime_error(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
  if (!j.is_object() || !j.contains("command") || !j["command"].is_string()) {
    throw std::runtime_error(path + ": config must be an object with a string \"command\"");
  }
  std::vector<std::string> args{"eqlab", j["command"].get<std::string>()};
  for (const auto& [key, value] : j.items()) {
    if (key == "command") continue;
    if (key == "functions") {
      for (const auto& f : value) args.push_back(f.get<std::string>());
      continue;
    }
    auto push = [&](const nlohmann::json& v) {
      args.push_back("--" + key);
      if (v.is_boolean()) {
        if (!v.get<bool>()) args.pop_back();
      } else {
        args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
    };
    if (value.is_array()) {
      for (const auto& v : value) push(v);
    } else {
      push(value);
    }
  }
  return args;
}

} // namespace eqlab::cli
