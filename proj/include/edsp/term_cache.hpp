#pragma once

#include <filesystem>

#include "edsp/eds.hpp"

namespace edsp {

/// Writes every known B_n as {"<index>": "<decimal>"} together with the curve
/// and point, so a later run can resume.
void save_term_cache(const EdsSequence& seq, const std::filesystem::path& path);

/// Loads a cache written by save_term_cache into seq. Throws ConfigError when
/// the file is malformed or belongs to another curve or point. Returns the
/// number of terms loaded.
std::size_t load_term_cache(EdsSequence& seq, const std::filesystem::path& path);

}  // namespace edsp
