#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "forest.hpp"
#include "grid.hpp"
#include "polygons.hpp"

namespace habitat {

/// Paired probability/binary suitability maps for one (year, month).
/// binary(c) = 1 iff probability(c) >= threshold; nodata masks match.
struct HabitatMap {
    Grid probability;
    Grid binary;
    int year = 0;
    int month = 0;
    double threshold = 0.5;
};

/// Per-cell forest probability over the stack (nodata wherever any layer is
/// nodata), thresholded into the binary companion. The stack's layer names
/// and order must equal the forest's feature names.
HabitatMap predict_map(const RandomForest& forest, const FeatureStack& stack, double threshold,
                       int n_threads = 1);

/// Derives the binary layer of an existing probability grid at `threshold`.
HabitatMap threshold_map(const Grid& probability, int year, int month, double threshold);

/// Area of cells classified suitable, optionally restricted to cells whose
/// centers fall inside `zone`.
double suitable_area_km2(const HabitatMap& map, const NamedPolygon* zone = nullptr);

struct SeriesEntry {
    int year = 0;
    int month = 0;
    double total_km2 = 0.0;
    std::vector<double> zone_km2;  // parallel to HabitatSeries::zone_names
};

struct HabitatSeries {
    std::vector<std::string> zone_names;
    std::vector<SeriesEntry> entries;  // sorted by (year, month)
};

/// One entry per map with total and per-zone suitable areas. Duplicate
/// (year, month) pairs are an error.
HabitatSeries monthly_series(std::span<const HabitatMap> maps, const PolygonSet& zones);

/// Percentage change of annual mean area against the baseline year:
/// 100 * (A(y) - A(base)) / A(base). zone_index selects a zone column;
/// nullopt selects the total. Zero or missing baseline area is an error.
std::vector<std::pair<int, double>> percent_change(const HabitatSeries& series, int baseline_year,
                                                   std::optional<std::size_t> zone_index);

/// Series as delimited text: year, month, total_km2, <zone>_km2...
std::string write_series(const HabitatSeries& series, char delimiter);
HabitatSeries parse_series(std::string_view text, char delimiter);

enum class RenderMode { binary, probability };

/// Deterministic P6 portable pixmap. Probability mode ramps white (0) to red
/// (1); binary mode is two-tone red/white; nodata cells are gray.
std::string render_map_image(const HabitatMap& map, RenderMode mode);

}  // namespace habitat
