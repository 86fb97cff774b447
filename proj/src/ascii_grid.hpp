#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "grid.hpp"

namespace habitat {

/// Parses an ESRI-style ASCII grid: six header lines (ncols, nrows,
/// xllcorner, yllcorner, cellsize, NODATA_value; keys case-insensitive, in
/// that order) followed by nrows x ncols whitespace-separated values, top row
/// first. Cells equal to the header's nodata value are flagged nodata.
/// Malformed input raises ParseError naming the line and column.
Grid parse_ascii_grid(std::string_view text, GridKind kind = GridKind::continuous);

/// Serializes a grid in the format accepted by parse_ascii_grid. Values are
/// written with shortest round-trip formatting, so parse(write(g)) == g.
std::string write_ascii_grid(const Grid& grid);

Grid read_ascii_grid(const std::filesystem::path& path, GridKind kind = GridKind::continuous);
void write_ascii_grid_file(const Grid& grid, const std::filesystem::path& path);

/// Shortest decimal form of v that parses back to exactly v.
std::string format_double(double v);

/// Whole-file helpers shared by the format modules.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace habitat
