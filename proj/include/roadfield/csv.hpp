#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace roadfield::csv {

/// Shortest round-trip-safe rendering: 17 significant digits (%.17g).
std::string fmt(double value);

/// Joins already formatted cells with commas.
std::string row(std::initializer_list<std::string_view> cells);
std::string row(const std::vector<std::string>& cells);

/// Writes `contents` to `path` through a temporary file and a rename, so a
/// failed run never leaves a truncated file behind.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace roadfield::csv
