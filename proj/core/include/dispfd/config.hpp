// Experiment configuration: flat key/value text with [table] sections
// (keys inside a table are addressed as "table.key"), or a JSON object
// flattened the same way.

#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dispfd {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class Config {
 public:
  static Config load(const std::filesystem::path& path);
  static Config parse_text(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  // Comma-separated list of numbers.
  std::vector<double> get_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace dispfd
