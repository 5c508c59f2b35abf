#include "cli/output.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "eqlab/util/format.hpp"

namespace eqlab::cli {

std::string config_hash(const nlohmann::json& config) { return hex64(fnv1a64(config.dump())); }

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Artifact::Artifact(std::string command, nlohmann::json config, std::vector<std::string> columns)
    : command_(std::move(command)), config_(std::move(config)), hash_(config_hash(config_)), columns_(std::move(columns)) {}

void Artifact::row(std::vector<std::string> cells, nlohmann::json mirror) {
  if (cells.size() != columns_.size()) throw std::logic_error("row width does not match the header");
  rows_.push_back(std::move(cells));
  mirror_.push_back(std::move(mirror));
}

std::string Artifact::csv(const std::string& timestamp) const {
  std::ostringstream os;
  os << "# eqlab " << command_ << " config_hash=" << hash_ << "\n";
  os << "# generated " << timestamp << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << "\n";
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(r[i]);
    os << "\n";
  }
  return os.str();
}

nlohmann::json Artifact::json(const std::string& timestamp) const {
  nlohmann::json j;
  j["command"] = command_;
  j["config"] = config_;
  j["config_hash"] = hash_;
  j["generated"] = timestamp;
  j["rows"] = mirror_;
  if (!meta_.empty()) j["meta"] = meta_;
  return j;
}

void Artifact::emit(const std::string& prefix, std::ostream& out) const {
  const std::string ts = utc_timestamp();
  if (prefix.empty()) {
    out << csv(ts);
    return;
  }
  std::ofstream c(prefix + ".csv");
  if (!c) throw std::runtime_error("cannot write " + prefix + ".csv");
  c << csv(ts);
  std::ofstream j(prefix + ".json");
  if (!j) throw std::runtime_error("cannot write " + prefix + ".json");
  j << json(ts).dump(2) << "\n";
}

} // namespace eqlab::cli
