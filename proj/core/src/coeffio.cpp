#include "dispfd/coeffio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dispfd/csv.hpp"

namespace dispfd {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& key) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() ||
      !std::isfinite(v))
    throw std::runtime_error("invalid number for key '" + key + "': " + text);
  return v;
}

InteriorScheme from_record(const std::map<std::string, std::string>& rec) {
  for (const char* key : {"name", "alpha", "beta", "a", "b", "c"})
    if (!rec.contains(key))
      throw std::runtime_error("coefficient record missing key '" +
                               std::string(key) + "'");
  InteriorScheme s;
  s.name = rec.at("name");
  s.alpha = parse_number(rec.at("alpha"), "alpha");
  s.beta = parse_number(rec.at("beta"), "beta");
  s.a = parse_number(rec.at("a"), "a");
  s.b = parse_number(rec.at("b"), "b");
  s.c = parse_number(rec.at("c"), "c");
  if (rec.contains("d")) s.d = parse_number(rec.at("d"), "d");
  if (rec.contains("e")) s.e = parse_number(rec.at("e"), "e");
  if (rec.contains("f")) s.f = parse_number(rec.at("f"), "f");
  if (rec.contains("gamma"))
    s.gamma_opt = parse_number(rec.at("gamma"), "gamma");
  return s;
}

std::vector<InteriorScheme> load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.is_object()) j = nlohmann::json::array({j});
  std::vector<InteriorScheme> out;
  for (const auto& rec : j) {
    for (const char* key : {"name", "alpha", "beta", "a", "b", "c"})
      if (!rec.contains(key))
        throw std::runtime_error("coefficient record missing key '" +
                                 std::string(key) + "'");
    InteriorScheme s;
    s.name = rec.at("name").get<std::string>();
    s.alpha = rec.at("alpha").get<double>();
    s.beta = rec.at("beta").get<double>();
    s.a = rec.at("a").get<double>();
    s.b = rec.at("b").get<double>();
    s.c = rec.at("c").get<double>();
    s.d = rec.value("d", 0.0);
    s.e = rec.value("e", 0.0);
    s.f = rec.value("f", 0.0);
    if (rec.contains("gamma")) s.gamma_opt = rec.at("gamma").get<double>();
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<InteriorScheme> load_coefficients(
    const std::filesystem::path& path) {
  if (path.extension() == ".json") return load_json(path);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<InteriorScheme> out;
  std::map<std::string, std::string> rec;
  std::string line;
  auto flush = [&] {
    if (!rec.empty()) out.push_back(from_record(rec));
    rec.clear();
  };
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("malformed line: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "name") flush();
    if (rec.contains(key))
      throw std::runtime_error("duplicate key '" + key + "' in record");
    rec[key] = val;
  }
  flush();
  return out;
}

void save_coefficients(const std::filesystem::path& path,
                       const std::vector<InteriorScheme>& schemes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  for (const auto& s : schemes) {
    out << "name = " << s.name << '\n';
    out << "alpha = " << format_number(s.alpha) << '\n';
    out << "beta = " << format_number(s.beta) << '\n';
    out << "a = " << format_number(s.a) << '\n';
    out << "b = " << format_number(s.b) << '\n';
    out << "c = " << format_number(s.c) << '\n';
    if (s.augmented()) {
      out << "d = " << format_number(s.d) << '\n';
      out << "e = " << format_number(s.e) << '\n';
      out << "f = " << format_number(s.f) << '\n';
    }
    if (s.gamma_opt)
      out << "gamma = " << format_number(*s.gamma_opt) << '\n';
    out << '\n';
  }
}

}  // namespace dispfd
