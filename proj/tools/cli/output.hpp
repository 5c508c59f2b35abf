#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace eqlab::cli {

// A CSV table with a JSON mirror. The first header line carries the config
// hash; the second line is the timestamp and is not part of the hash.
class Artifact {
 public:
  Artifact(std::string command, nlohmann::json config, std::vector<std::string> columns);

  void row(std::vector<std::string> cells, nlohmann::json mirror);
  void meta(const std::string& key, nlohmann::json value) { meta_[key] = std::move(value); }

  const std::string& hash() const { return hash_; }
  std::string csv(const std::string& timestamp) const;
  nlohmann::json json(const std::string& timestamp) const;

  // Writes <prefix>.csv and <prefix>.json, or the CSV to `out` when prefix is empty.
  void emit(const std::string& prefix, std::ostream& out) const;

 private:
  std::string command_;
  nlohmann::json config_;
  std::string hash_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  nlohmann::json mirror_ = nlohmann::json::array();
  nlohmann::json meta_ = nlohmann::json::object();
};

std::string config_hash(const nlohmann::json& config);
std::string csv_escape(const std::string& cell);
std::string utc_timestamp();

} // namespace eqlab::cli
