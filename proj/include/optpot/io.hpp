#pragma once

#include <filesystem>
#include <string>

#include "optpot/grid.hpp"

namespace optpot {

/// CSV text of a field: header "r,value" (Radial) or "x,y,value" (Disc2D),
/// one row per node in index order, 17 significant digits.
std::string field_to_csv(const Field& field);
/// Parses CSV written by field_to_csv for the same grid. Throws IoError on
/// malformed rows, wrong row counts or coordinates that do not match.
Field field_from_csv(const GridPtr& grid, const std::string& text);

void write_field_csv(const std::filesystem::path& path, const Field& field);
Field read_field_csv(const GridPtr& grid, const std::filesystem::path& path);

struct PgmScale {
  double min = 0.0;
  double max = 0.0;
};

/// Plain 8-bit PGM (P2) heatmap scaled linearly from min to max. Disc fields
/// map one node to one pixel; radial fields are revolved onto a
/// (2n-1) x (2n-1) image. The scale is also written as a comment line.
std::string field_to_pgm(const Field& field, PgmScale* scale = nullptr);
PgmScale write_field_pgm(const std::filesystem::path& path, const Field& field);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace optpot
