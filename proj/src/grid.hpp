#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geodesy.hpp"

namespace habitat {

/// Regular lat/lon lattice. Row 0 is the northernmost row (matching the
/// serialized raster order, top row first); column 0 is the westernmost.
struct GridSpec {
    int ncols = 0;
    int nrows = 0;
    double xllcorner = 0.0;
    double yllcorner = 0.0;
    double cellsize = 0.0;

    bool operator==(const GridSpec&) const = default;

    /// Throws InvalidArgument when dimensions or bounds are out of range.
    void validate() const;

    double lon_center(int col) const { return xllcorner + (col + 0.5) * cellsize; }
    double lat_center(int row) const { return yllcorner + (nrows - row - 0.5) * cellsize; }
    double lat_top(int row) const { return yllcorner + (nrows - row) * cellsize; }
    double lat_bottom(int row) const { return yllcorner + (nrows - row - 1) * cellsize; }
    LonLat center(int row, int col) const { return {lon_center(col), lat_center(row)}; }

    double xurcorner() const { return xllcorner + ncols * cellsize; }
    double yurcorner() const { return yllcorner + nrows * cellsize; }

    std::size_t cell_count() const {
        return static_cast<std::size_t>(ncols) * static_cast<std::size_t>(nrows);
    }

    bool contains(LonLat p) const {
        return p.lon >= xllcorner && p.lon < xurcorner() && p.lat >= yllcorner &&
               p.lat < yurcorner();
    }

    /// Cell containing p by floor indexing, or nullopt outside the extent.
    std::optional<std::pair<int, int>> cell_of(LonLat p) const;
};

enum class GridKind { continuous, categorical };

/// Raster of doubles with a per-cell nodata flag. Immutable once built by the
/// producing operation; all accessors are const and thread-safe.
class Grid {
public:
    Grid() = default;
    /// All cells start as nodata.
    Grid(GridSpec spec, GridKind kind = GridKind::continuous, double nodata_value = -9999.0);

    static Grid constant(const GridSpec& spec, double value,
                         GridKind kind = GridKind::continuous, double nodata_value = -9999.0);

    const GridSpec& spec() const { return spec_; }
    GridKind kind() const { return kind_; }
    double nodata_value() const { return nodata_value_; }
    int nrows() const { return spec_.nrows; }
    int ncols() const { return spec_.ncols; }

    bool is_nodata(int row, int col) const { return mask_[index(row, col)] == 0; }
    /// Stored cell value; equals nodata_value on nodata cells.
    double at(int row, int col) const { return values_[index(row, col)]; }
    /// Cell value, or nullopt when the cell is nodata.
    std::optional<double> value(int row, int col) const {
        const std::size_t i = index(row, col);
        if (mask_[i] == 0) return std::nullopt;
        return values_[i];
    }

    void set(int row, int col, double v) {
        const std::size_t i = index(row, col);
        values_[i] = v;
        mask_[i] = 1;
    }
    void set_nodata(int row, int col) {
        const std::size_t i = index(row, col);
        values_[i] = nodata_value_;
        mask_[i] = 0;
    }

    std::size_t valid_count() const;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(spec_.ncols) +
               static_cast<std::size_t>(col);
    }

    GridSpec spec_;
    GridKind kind_ = GridKind::continuous;
    double nodata_value_ = -9999.0;
    std::vector<double> values_;
    std::vector<std::uint8_t> mask_;
};

enum class ResampleMethod { nearest, bilinear };

/// Maps src onto the target lattice. Nearest takes the src cell containing
/// each output cell center; bilinear interpolates from the four surrounding
/// src cell centers and falls back to nearest when a neighbor is nodata or
/// missing (output centers in the half-cell edge band). Output centers
/// outside the src extent become nodata. Bilinear on a categorical grid is an
/// error. Identical specs short-circuit to a bit-identical copy.
Grid resample(const Grid& src, const GridSpec& target, ResampleMethod method);

/// Value of the cell containing p, or nullopt outside the extent / on nodata.
std::optional<double> sample_at(const Grid& g, LonLat p);

/// Great-circle distance in meters from every cell center to the nearest
/// feature-cell center. Feature cells are the valid, non-zero cells of
/// `features`, which must conform to `spec` and contain at least one feature.
Grid distance_transform(const Grid& features, const GridSpec& spec, int n_threads = 1);

/// Spherical area of one cell in row `row`; identical across the row.
double cell_area_km2(const GridSpec& spec, int row);

/// Ordered set of co-registered predictor layers for one (year, month).
struct FeatureStack {
    GridSpec spec;
    int year = 0;
    int month = 0;
    std::vector<std::string> names;
    std::vector<Grid> layers;

    std::size_t size() const { return layers.size(); }

    /// Feature vector at (row, col) in layer order, or nullopt when any
    /// layer is nodata there.
    std::optional<std::vector<double>> features_at(int row, int col) const;

    /// Stack restricted to `wanted`, in that order. Throws InvalidArgument
    /// when a name is missing.
    FeatureStack select(std::span<const std::string> wanted) const;
};

/// Resamples each (name, grid) onto `target` (nearest for categorical,
/// bilinear for continuous) and assembles the stack. Duplicate names are an
/// error. Layers already conforming to `target` are copied bit-identically.
FeatureStack build_stack(const std::vector<std::pair<std::string, Grid>>& layers,
                         const GridSpec& target, int year, int month);

}  // namespace habitat
