// Coefficient files: one scheme per record with keys name, alpha, beta,
// a, b, c and optional d, e, f, gamma. Plain key = value records separated
// by each new name key; a .json file holding an array of objects is
// accepted as an alternative.

#pragma once

#include <filesystem>
#include <vector>

#include "dispfd/scheme.hpp"

namespace dispfd {

std::vector<InteriorScheme> load_coefficients(
    const std::filesystem::path& path);

void save_coefficients(const std::filesystem::path& path,
                       const std::vector<InteriorScheme>& schemes);

}  // namespace dispfd
