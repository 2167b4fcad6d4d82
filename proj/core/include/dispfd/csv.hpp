// CSV output with shortest round-trip numeric formatting.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dispfd {

// Shortest decimal text that parses back to exactly v.
std::string format_number(double v);

// Comma-separated, header row, LF line endings.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace dispfd
