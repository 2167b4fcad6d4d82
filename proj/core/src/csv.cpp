#include "dispfd/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace dispfd {

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  for (size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("row width does not match header");
    for (size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

}  // namespace dispfd
