#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include <json.hpp>

#include "ascii_grid.hpp"
#include "error.hpp"
#include "grid.hpp"
#include "log.hpp"
#include "polygons.hpp"
#include "rng.hpp"

namespace habitat {

namespace {

// Seasonal weights, January first. Rain peaks in July; vegetation follows
// with the post-monsoon flush peaking in October and LAI lagging a month.
constexpr double kRainSeason[12] = {0.10, 0.10, 0.15, 0.25, 0.35, 0.70,
                                    1.00, 0.95, 0.75, 0.45, 0.20, 0.10};
constexpr double kVegSeason[12] = {0.25, 0.22, 0.20, 0.22, 0.28, 0.38,
                                   0.55, 0.75, 0.92, 1.00, 0.85, 0.50};

double veg_lag(int month_index) { return kVegSeason[(month_index + 11) % 12]; }

/// Smooth random field: a handful of Gaussian bumps, normalized to [0, 1].
/// With `dominant` set, the first bump is tall, narrow and centered in the
/// inner half of the region, so the high-value core stays compact and away
/// from the edges; the rest are low-amplitude texture.
class BumpField {
public:
    BumpField(const GridSpec& spec, std::uint64_t seed, int n_bumps, bool dominant = false) {
        Rng rng(seed);
        const double width = spec.ncols * spec.cellsize;
        const double height = spec.nrows * spec.cellsize;
        const double extent = std::min(width, height);
        for (int i = 0; i < n_bumps; ++i) {
            Bump b;
            if (dominant && i == 0) {
                b.lon = spec.xllcorner + (0.30 + 0.40 * rng.next_double()) * width;
                b.lat = spec.yllcorner + (0.30 + 0.40 * rng.next_double()) * height;
                b.sigma = extent * (0.14 + 0.06 * rng.next_double());
                b.amplitude = 1.0;
            } else {
                b.lon = spec.xllcorner + rng.next_double() * width;
                b.lat = spec.yllcorner + rng.next_double() * height;
                b.sigma = extent * (0.12 + 0.18 * rng.next_double());
                b.amplitude = dominant ? 0.10 + 0.15 * rng.next_double()
                                       : 0.40 + 0.60 * rng.next_double();
            }
            bumps_.push_back(b);
        }
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int r = 0; r < spec.nrows; ++r) {
            for (int c = 0; c < spec.ncols; ++c) {
                const double v = raw(spec.center(r, c));
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        offset_ = lo;
        scale_ = hi > lo ? 1.0 / (hi - lo) : 1.0;
    }

    double at(LonLat p) const { return (raw(p) - offset_) * scale_; }

private:
    struct Bump {
        double lon, lat, sigma, amplitude;
    };

    double raw(LonLat p) const {
        double v = 0.0;
        for (const auto& b : bumps_) {
            const double dx = p.lon - b.lon;
            const double dy = p.lat - b.lat;
            v += b.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * b.sigma * b.sigma));
        }
        return v;
    }

    std::vector<Bump> bumps_;
    double offset_ = 0.0;
    double scale_ = 1.0;
};

struct Surface {
    GridSpec spec;
    BumpField wet;
    BumpField relief;

    Surface(const GridSpec& s, std::uint64_t seed)
        : spec(s),
          wet(s, derive_seed(seed, 101), 4, /*dominant=*/true),
          relief(s, derive_seed(seed, 102), 4) {}

    double wetness(LonLat p) const { return 0.25 + 0.75 * wet.at(p); }
    double elevation(LonLat p) const { return 100.0 + 2400.0 * relief.at(p); }
    double elev_band(LonLat p) const {
        const double e = (elevation(p) - 800.0) / 600.0;
        return std::exp(-e * e);
    }
    double year_scale(int year, int first_year) const {
        return 1.0 - 0.03 * (year - first_year);
    }

    double precip(LonLat p, int mi) const { return (15.0 + 420.0 * kRainSeason[mi]) * wetness(p); }
    double tmax(LonLat p, int mi) const {
        return 40.0 - 0.005 * elevation(p) - 6.0 * kRainSeason[mi] -
               0.4 * (p.lat - spec.yllcorner);
    }
    double tmin(LonLat p, int mi) const {
        return tmax(p, mi) - 9.0 - 5.0 * (1.0 - kRainSeason[mi]);
    }
    double npp(LonLat p, int mi, double yscale) const {
        return 9.0 * kVegSeason[mi] * yscale * wetness(p) * (0.35 + 0.65 * elev_band(p));
    }
    double lai(LonLat p, int mi, double yscale) const {
        return 7.0 * veg_lag(mi) * yscale * wetness(p);
    }

    /// Logistic suitability in the three informative variables. Weights and
    /// offsets keep the suitable core compact and the periphery strongly
    /// unsuitable, so the planted signal is learnable.
    double suitability(LonLat p, int mi, double yscale) const {
        const double npp_norm = npp(p, mi, yscale) / 9.0;
        const double lai_norm = lai(p, mi, yscale) / 7.0;
        const double z = 10.0 * (npp_norm - 0.52) + 5.0 * (lai_norm - 0.48) +
                         3.5 * (elev_band(p) - 0.45);
        return 1.0 / (1.0 + std::exp(-z));
    }
};

Grid field_to_grid(const GridSpec& spec, const std::function<double(LonLat)>& field) {
    Grid g(spec, GridKind::continuous);
    for (int r = 0; r < spec.nrows; ++r)
        for (int c = 0; c < spec.ncols; ++c) g.set(r, c, field(spec.center(r, c)));
    return g;
}

std::string month_tag(int year, int month) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d_%02d", year, month);
    return buf;
}

Ring rectangle_ring(double x0, double y0, double x1, double y1) {
    return Ring{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}}};
}

}  // namespace

SynthStats generate_fixtures(const RunConfig& config) {
    namespace fs = std::filesystem;
    const SynthConfig& sc = config.synth;
    GridSpec spec{sc.ncols, sc.nrows, sc.xllcorner, sc.yllcorner, sc.cellsize};
    spec.validate();
    for (const auto& [path, what] :
         {std::pair{config.paths.occurrences, "occurrences"},
          {config.paths.layer_manifest, "layer_manifest"},
          {config.paths.range_map, "range_map"},
          {config.paths.zones, "zones"}}) {
        if (path.empty())
            throw InvalidArgument(std::string("synth requires paths.") + what + " in the config");
    }

    const std::uint64_t seed = config.master_seed;
    const Surface surface(spec, seed);
    const int first_year = *std::min_element(sc.years.begin(), sc.years.end());

    const fs::path raster_dir = config.paths.layer_manifest.parent_path() / "rasters";
    const fs::path truth_dir = config.paths.layer_manifest.parent_path() / "truth";
    fs::create_directories(raster_dir);
    fs::create_directories(truth_dir);

    SynthStats stats;
    nlohmann::json manifest_layers = nlohmann::json::array();
    auto add_layer = [&](const std::string& name, const std::string& file, bool is_static,
                         int year, int month) {
        nlohmann::json temporal;
        if (is_static) {
            temporal = {{"type", "static"}};
        } else {
            temporal = {{"type", "monthly"}, {"year", year}, {"month", month}};
        }
        manifest_layers.push_back({{"name", name},
                                   {"path", "rasters/" + file},
                                   {"kind", "continuous"},
                                   {"temporal", temporal}});
    };

    // Static elevation, with a small nodata notch so incomplete cells flow
    // through the whole pipeline.
    Grid elevation = field_to_grid(spec, [&](LonLat p) { return surface.elevation(p); });
    elevation.set_nodata(0, 0);
    elevation.set_nodata(0, 1);
    elevation.set_nodata(1, 0);
    elevation.set_nodata(1, 1);
    write_ascii_grid_file(elevation, raster_dir / "elevation.asc");
    add_layer("elevation", "elevation.asc", true, 0, 0);
    ++stats.rasters_written;

    for (const int year : sc.years) {
        const double yscale = surface.year_scale(year, first_year);
        for (int month = 1; month <= 12; ++month) {
            const int mi = month - 1;
            const std::string tag = month_tag(year, month);
            Rng noise_rng(derive_seed(seed, 0x401000 + static_cast<std::uint64_t>(year) * 16 +
                                                static_cast<std::uint64_t>(month)));
            Grid noise(spec, GridKind::continuous);
            for (int r = 0; r < spec.nrows; ++r)
                for (int c = 0; c < spec.ncols; ++c) noise.set(r, c, noise_rng.next_double());

            const std::vector<std::pair<std::string, Grid>> monthly = {
                {"precip", field_to_grid(spec, [&](LonLat p) { return surface.precip(p, mi); })},
                {"tmin", field_to_grid(spec, [&](LonLat p) { return surface.tmin(p, mi); })},
                {"tmax", field_to_grid(spec, [&](LonLat p) { return surface.tmax(p, mi); })},
                {"npp",
                 field_to_grid(spec, [&](LonLat p) { return surface.npp(p, mi, yscale); })},
                {"lai",
                 field_to_grid(spec, [&](LonLat p) { return surface.lai(p, mi, yscale); })},
                {"noise", noise}};
            for (const auto& [name, grid] : monthly) {
                const std::string file = name + "_" + tag + ".asc";
                write_ascii_grid_file(grid, raster_dir / file);
                add_layer(name, file, false, year, month);
                ++stats.rasters_written;
            }

            Grid truth = field_to_grid(
                spec, [&](LonLat p) { return surface.suitability(p, mi, yscale); });
            write_ascii_grid_file(truth, truth_dir / ("suitability_" + tag + ".asc"));
            ++stats.truth_grids_written;
        }
    }

    const nlohmann::json manifest{{"layers", manifest_layers}};
    write_text_file(config.paths.layer_manifest, manifest.dump(2) + "\n");

    // Occurrences: rejection-sample cells with weight suitability^3, so the
    // bulk of records sits on strongly suitable cells.
    Rng occ_rng(derive_seed(seed, 0x0CC));
    std::string occ_text = "decimalLatitude\tdecimalLongitude\teventDate\tcoordinateUncertaintyInMeters\n";
    const std::size_t max_attempts = static_cast<std::size_t>(sc.n_occurrences) * 100000;
    std::size_t written = 0;
    for (std::size_t attempt = 0; attempt < max_attempts && written <
         static_cast<std::size_t>(sc.n_occurrences); ++attempt) {
        const int r = static_cast<int>(occ_rng.next_below(spec.nrows));
        const int c = static_cast<int>(occ_rng.next_below(spec.ncols));
        const int year = sc.years[occ_rng.next_below(sc.years.size())];
        const int month = 1 + static_cast<int>(occ_rng.next_below(12));
        const LonLat center = spec.center(r, c);
        const double p = surface.suitability(center, month - 1,
                                             surface.year_scale(year, first_year));
        if (occ_rng.next_double() >= p * p * p) continue;
        const double jlon = (occ_rng.next_double() - 0.5) * 0.7 * spec.cellsize;
        const double jlat = (occ_rng.next_double() - 0.5) * 0.7 * spec.cellsize;
        occ_text += format_double(center.lat + jlat);
        occ_text += '\t';
        occ_text += format_double(center.lon + jlon);
        occ_text += '\t';
        char date[16];
        if (occ_rng.next_double() < 0.9) {
            std::snprintf(date, sizeof date, "%04d-%02d-15", year, month);
        } else {
            std::snprintf(date, sizeof date, "%04d-%02d", year, month);
        }
        occ_text += date;
        occ_text += '\t';
        if (occ_rng.next_double() < 0.85)
            occ_text += format_double(std::floor(300.0 + 1700.0 * occ_rng.next_double()));
        occ_text += '\n';
        ++written;
    }
    if (written < static_cast<std::size_t>(sc.n_occurrences))
        throw Error("synthetic surface too hostile: only " + std::to_string(written) +
                    " occurrences sampled");
    write_text_file(config.paths.occurrences, occ_text);
    stats.occurrences_written = written;

    // Range map: the suitable cells (peak month, first year) dilated by one
    // cell, rasterized as one rectangle ring per horizontal cell run. This
    // mirrors a rasterized range-map export and keeps the complement large
    // enough for pseudo-absence sampling whatever shape the core takes.
    std::vector<std::vector<bool>> suitable(spec.nrows, std::vector<bool>(spec.ncols, false));
    std::size_t suitable_count = 0;
    for (int r = 0; r < spec.nrows; ++r)
        for (int c = 0; c < spec.ncols; ++c)
            if (surface.suitability(spec.center(r, c), 9, 1.0) >= 0.35) {
                suitable[r][c] = true;
                ++suitable_count;
            }
    if (suitable_count == 0)
        throw Error("synthetic surface has no suitable core; cannot build a range map");
    std::vector<std::vector<bool>> dilated(spec.nrows, std::vector<bool>(spec.ncols, false));
    for (int r = 0; r < spec.nrows; ++r)
        for (int c = 0; c < spec.ncols; ++c) {
            for (int dr = -1; dr <= 1 && !dilated[r][c]; ++dr)
                for (int dc = -1; dc <= 1 && !dilated[r][c]; ++dc) {
                    const int rr = r + dr, cc = c + dc;
                    if (rr >= 0 && rr < spec.nrows && cc >= 0 && cc < spec.ncols &&
                        suitable[rr][cc])
                        dilated[r][c] = true;
                }
        }
    PolygonSet range;
    range.role = PolygonRole::range_map;
    NamedPolygon range_poly;
    range_poly.name = "synthetic-range";
    for (int r = 0; r < spec.nrows; ++r) {
        int c = 0;
        while (c < spec.ncols) {
            if (!dilated[r][c]) {
                ++c;
                continue;
            }
            int end = c;
            while (end + 1 < spec.ncols && dilated[r][end + 1]) ++end;
            range_poly.rings.push_back(rectangle_ring(
                spec.xllcorner + c * spec.cellsize, spec.lat_bottom(r),
                spec.xllcorner + (end + 1) * spec.cellsize, spec.lat_top(r)));
            c = end + 1;
        }
    }
    range.polygons.push_back(std::move(range_poly));
    write_text_file(config.paths.range_map, write_polygons(range));

    // Four disjoint illustrative zones; they deliberately do not tile the
    // region.
    const double w = spec.ncols * spec.cellsize;
    const double h = spec.nrows * spec.cellsize;
    const double x0 = spec.xllcorner;
    const double y0 = spec.yllcorner;
    PolygonSet zones;
    zones.role = PolygonRole::zone;
    zones.polygons.push_back(NamedPolygon{
        "south", {rectangle_ring(x0 + 0.10 * w, y0 + 0.05 * h, x0 + 0.90 * w, y0 + 0.30 * h)}});
    zones.polygons.push_back(NamedPolygon{
        "central", {rectangle_ring(x0 + 0.25 * w, y0 + 0.35 * h, x0 + 0.75 * w, y0 + 0.60 * h)}});
    zones.polygons.push_back(NamedPolygon{
        "northwest", {rectangle_ring(x0 + 0.05 * w, y0 + 0.65 * h, x0 + 0.40 * w, y0 + 0.95 * h)}});
    zones.polygons.push_back(NamedPolygon{
        "northeast", {rectangle_ring(x0 + 0.60 * w, y0 + 0.65 * h, x0 + 0.95 * w, y0 + 0.95 * h)}});
    write_text_file(config.paths.zones, write_polygons(zones));

    log_info("synth: " + std::to_string(stats.rasters_written) + " rasters, " +
             std::to_string(stats.occurrences_written) + " occurrences");
    return stats;
}

}  // namespace habitat
