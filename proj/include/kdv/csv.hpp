#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kdv/model.hpp"

namespace kdv::cli {

// 17 significant digits in scientific notation; round-trips exactly.
std::string format_csv_value(double v);

// "x,u" header followed by one row per grid point.
std::string field_csv(const WaveField& field);
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

// Rows of an "x,u" CSV.
std::vector<std::pair<double, double>> parse_xu_csv(std::string_view text);

// Reads an "x,u" CSV onto `grid`; the row count must equal nx and the
// abscissae must match the grid points.
WaveField read_field_csv(const std::filesystem::path& path, const Grid1D& grid, double time = 0.0);

}  // namespace kdv::cli
