#include "dispfd/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dispfd {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

void flatten(const nlohmann::json& j, const std::string& prefix,
             std::map<std::string, std::string>& kv) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      flatten(*it, key, kv);
    } else if (it->is_array()) {
      std::string list;
      for (const auto& v : *it) {
        if (!list.empty()) list += ",";
        list += v.is_string() ? v.get<std::string>() : v.dump();
      }
      kv[key] = list;
    } else if (it->is_string()) {
      kv[key] = it->get<std::string>();
    } else {
      kv[key] = it->dump();
    }
  }
}

}  // namespace

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (path.extension() == ".json" ||
      (first != std::string::npos && text[first] == '{')) {
    Config cfg;
    try {
      flatten(nlohmann::json::parse(text), "", cfg.kv_);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("invalid JSON config: " + std::string(e.what()));
    }
    return cfg;
  }
  return parse_text(text);
}

Config Config::parse_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, table;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated table header");
      table = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!table.empty()) key = table + "." + key;
    if (cfg.kv_.contains(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " +
                        key);
    cfg.kv_[key] = val;
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return kv_.contains(key); }

std::string Config::get_string(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing config key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  std::string text = get_string(key);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("config key '" + key + "' is not a number: " + text);
  return v;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
  double v = get_double(key);
  int i = static_cast<int>(v);
  if (i != v) throw ConfigError("config key '" + key + "' is not an integer");
  return i;
}

int Config::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  std::string v = get_string(key);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config key '" + key + "' is not a boolean: " + v);
}

std::vector<double> Config::get_list(const std::string& key) const {
  std::string text = get_string(key);
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size())
      throw ConfigError("config key '" + key + "' has a bad list entry: " +
                        item);
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("config key '" + key + "' list is empty");
  return out;
}

void Config::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

}  // namespace dispfd
