#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "error.hpp"
#include "parallel.hpp"

namespace habitat {

void GridSpec::validate() const {
    if (ncols < 1 || nrows < 1)
        throw InvalidArgument("grid dimensions must be positive, got " + std::to_string(ncols) +
                              "x" + std::to_string(nrows));
    if (!(cellsize > 0.0) || !std::isfinite(cellsize))
        throw InvalidArgument("cellsize must be positive and finite");
    if (!std::isfinite(xllcorner) || xllcorner < -180.0 || xllcorner >= 360.0)
        throw InvalidArgument("xllcorner out of range [-180, 360)");
    if (!std::isfinite(yllcorner) || yllcorner < -90.0 || yllcorner > 90.0)
        throw InvalidArgument("yllcorner out of range [-90, 90]");
}

std::optional<std::pair<int, int>> GridSpec::cell_of(LonLat p) const {
    if (!contains(p)) return std::nullopt;
    int col = static_cast<int>(std::floor((p.lon - xllcorner) / cellsize));
    int row_from_bottom = static_cast<int>(std::floor((p.lat - yllcorner) / cellsize));
    // Points on the far edge of the last cell belong to it.
    col = std::min(col, ncols - 1);
    row_from_bottom = std::min(row_from_bottom, nrows - 1);
    return std::make_pair(nrows - 1 - row_from_bottom, col);
}

Grid::Grid(GridSpec spec, GridKind kind, double nodata_value)
    : spec_(spec),
      kind_(kind),
      nodata_value_(nodata_value),
      values_(spec.cell_count(), nodata_value),
      mask_(spec.cell_count(), 0) {
    spec_.validate();
}

Grid Grid::constant(const GridSpec& spec, double value, GridKind kind, double nodata_value) {
    Grid g(spec, kind, nodata_value);
    for (int r = 0; r < spec.nrows; ++r)
        for (int c = 0; c < spec.ncols; ++c) g.set(r, c, value);
    return g;
}

std::size_t Grid::valid_count() const {
    std::size_t n = 0;
    for (const auto flag : mask_) n += flag;
    return n;
}

namespace {

void copy_cell_nearest(const Grid& src, Grid& out, int row, int col, LonLat center) {
    const auto cell = src.spec().cell_of(center);
    if (!cell) {
        out.set_nodata(row, col);
        return;
    }
    if (src.is_nodata(cell->first, cell->second)) {
        out.set_nodata(row, col);
    } else {
        out.set(row, col, src.at(cell->first, cell->second));
    }
}

}  // namespace

Grid resample(const Grid& src, const GridSpec& target, ResampleMethod method) {
    target.validate();
    if (method == ResampleMethod::bilinear && src.kind() == GridKind::categorical)
        throw InvalidArgument("bilinear resampling is not valid for a categorical grid");

    Grid out(target, src.kind(), src.nodata_value());
    if (target == src.spec()) {
        for (int r = 0; r < target.nrows; ++r)
            for (int c = 0; c < target.ncols; ++c)
                if (!src.is_nodata(r, c)) out.set(r, c, src.at(r, c));
        return out;
    }

    const GridSpec& ss = src.spec();
    for (int r = 0; r < target.nrows; ++r) {
        for (int c = 0; c < target.ncols; ++c) {
            const LonLat center = target.center(r, c);
            if (method == ResampleMethod::nearest) {
                copy_cell_nearest(src, out, r, c, center);
                continue;
            }
            if (!ss.contains(center)) {
                out.set_nodata(r, c);
                continue;
            }
            // Fractional position on the lattice of src cell centers.
            const double fx = (center.lon - ss.xllcorner) / ss.cellsize - 0.5;
            const double fy = (center.lat - ss.yllcorner) / ss.cellsize - 0.5;
            const int c0 = static_cast<int>(std::floor(fx));
            const int rb0 = static_cast<int>(std::floor(fy));  // row index from the bottom
            const int c1 = c0 + 1;
            const int rb1 = rb0 + 1;
            const bool in_hull = c0 >= 0 && c1 < ss.ncols && rb0 >= 0 && rb1 < ss.nrows;
            if (!in_hull) {
                copy_cell_nearest(src, out, r, c, center);
                continue;
            }
            const int r0 = ss.nrows - 1 - rb0;
            const int r1 = ss.nrows - 1 - rb1;
            if (src.is_nodata(r0, c0) || src.is_nodata(r0, c1) || src.is_nodata(r1, c0) ||
                src.is_nodata(r1, c1)) {
                copy_cell_nearest(src, out, r, c, center);
                continue;
            }
            const double wx = fx - c0;
            const double wy = fy - rb0;
            const double bottom = src.at(r0, c0) * (1.0 - wx) + src.at(r0, c1) * wx;
            const double top = src.at(r1, c0) * (1.0 - wx) + src.at(r1, c1) * wx;
            out.set(r, c, bottom * (1.0 - wy) + top * wy);
        }
    }
    return out;
}

std::optional<double> sample_at(const Grid& g, LonLat p) {
    const auto cell = g.spec().cell_of(p);
    if (!cell) return std::nullopt;
    return g.value(cell->first, cell->second);
}

Grid distance_transform(const Grid& features, const GridSpec& spec, int n_threads) {
    if (features.spec() != spec)
        throw InvalidArgument("feature mask does not conform to the requested grid spec");
    std::vector<LonLat> centers;
    for (int r = 0; r < spec.nrows; ++r)
        for (int c = 0; c < spec.ncols; ++c)
            if (!features.is_nodata(r, c) && features.at(r, c) != 0.0)
                centers.push_back(spec.center(r, c));
    if (centers.empty()) throw InvalidArgument("distance transform requires at least one feature cell");

    Grid out(spec, GridKind::continuous, features.nodata_value());
    parallel_for(static_cast<std::size_t>(spec.nrows), n_threads,
                 [&](std::size_t begin, std::size_t end) {
                     for (std::size_t r = begin; r < end; ++r) {
                         for (int c = 0; c < spec.ncols; ++c) {
                             const LonLat p = spec.center(static_cast<int>(r), c);
                             double best = std::numeric_limits<double>::infinity();
                             for (const auto& f : centers) {
                                 const double d = geo::haversine_m(p, f);
                                 if (d < best) best = d;
                             }
                             out.set(static_cast<int>(r), c, best);
                         }
                     }
                 });
    return out;
}

double cell_area_km2(const GridSpec& spec, int row) {
    if (row < 0 || row >= spec.nrows)
        throw InvalidArgument("row " + std::to_string(row) + " outside grid of " +
                              std::to_string(spec.nrows) + " rows");
    return geo::cell_area_km2(spec.lat_bottom(row), spec.lat_top(row), spec.cellsize);
}

std::optional<std::vector<double>> FeatureStack::features_at(int row, int col) const {
    std::vector<double> out;
    out.reserve(layers.size());
    for (const auto& layer : layers) {
        const auto v = layer.value(row, col);
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

FeatureStack FeatureStack::select(std::span<const std::string> wanted) const {
    FeatureStack out;
    out.spec = spec;
    out.year = year;
    out.month = month;
    for (const auto& name : wanted) {
        bool found = false;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == name) {
                out.names.push_back(names[i]);
                out.layers.push_back(layers[i]);
                found = true;
                break;
            }
        }
        if (!found) throw InvalidArgument("stack has no layer named '" + name + "'");
    }
    return out;
}

FeatureStack build_stack(const std::vector<std::pair<std::string, Grid>>& layers,
                         const GridSpec& target, int year, int month) {
    std::set<std::string> seen;
    FeatureStack stack;
    stack.spec = target;
    stack.year = year;
    stack.month = month;
    for (const auto& [name, grid] : layers) {
        if (!seen.insert(name).second) throw InvalidArgument("duplicate layer name '" + name + "'");
        const ResampleMethod method = grid.kind() == GridKind::categorical
                                          ? ResampleMethod::nearest
                                          : ResampleMethod::bilinear;
        stack.names.push_back(name);
        stack.layers.push_back(resample(grid, target, method));
    }
    return stack;
}

}  // namespace habitat
