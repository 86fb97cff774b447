#include "analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "ascii_grid.hpp"
#include "error.hpp"
#include "parallel.hpp"

namespace habitat {

HabitatMap predict_map(const RandomForest& forest, const FeatureStack& stack, double threshold,
                       int n_threads) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw InvalidArgument("threshold must lie in (0, 1)");
    if (stack.names != forest.feature_names) {
        std::string got;
        for (const auto& n : stack.names) got += (got.empty() ? "" : ",") + n;
        std::string want;
        for (const auto& n : forest.feature_names) want += (want.empty() ? "" : ",") + n;
        throw InvalidArgument("stack layers [" + got + "] do not match forest features [" + want +
                              "]");
    }

    const GridSpec& spec = stack.spec;
    HabitatMap map;
    map.probability = Grid(spec, GridKind::continuous);
    map.binary = Grid(spec, GridKind::categorical);
    map.year = stack.year;
    map.month = stack.month;
    map.threshold = threshold;

    parallel_for(static_cast<std::size_t>(spec.nrows), n_threads,
                 [&](std::size_t begin, std::size_t end) {
                     std::vector<double> x(stack.size());
                     for (std::size_t r = begin; r < end; ++r) {
                         for (int c = 0; c < spec.ncols; ++c) {
                             bool complete = true;
                             for (std::size_t li = 0; li < stack.layers.size(); ++li) {
                                 const auto v = stack.layers[li].value(static_cast<int>(r), c);
                                 if (!v) {
                                     complete = false;
                                     break;
                                 }
                                 x[li] = *v;
                             }
                             if (!complete) continue;  // both grids default to nodata
                             const double p = forest.predict_proba(x);
                             map.probability.set(static_cast<int>(r), c, p);
                             map.binary.set(static_cast<int>(r), c, p >= threshold ? 1.0 : 0.0);
                         }
                     }
                 });
    return map;
}

HabitatMap threshold_map(const Grid& probability, int year, int month, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw InvalidArgument("threshold must lie in (0, 1)");
    HabitatMap map;
    map.probability = probability;
    map.binary = Grid(probability.spec(), GridKind::categorical);
    map.year = year;
    map.month = month;
    map.threshold = threshold;
    for (int r = 0; r < probability.nrows(); ++r)
        for (int c = 0; c < probability.ncols(); ++c)
            if (const auto p = probability.value(r, c))
                map.binary.set(r, c, *p >= threshold ? 1.0 : 0.0);
    return map;
}

double suitable_area_km2(const HabitatMap& map, const NamedPolygon* zone) {
    const GridSpec& spec = map.binary.spec();
    double total = 0.0;
    for (int r = 0; r < spec.nrows; ++r) {
        double row_area = 0.0;
        bool row_area_known = false;
        for (int c = 0; c < spec.ncols; ++c) {
            const auto v = map.binary.value(r, c);
            if (!v || *v != 1.0) continue;
            if (zone != nullptr && !point_in_polygon(spec.center(r, c), *zone)) continue;
            if (!row_area_known) {
                row_area = cell_area_km2(spec, r);
                row_area_known = true;
            }
            total += row_area;
        }
    }
    return total;
}

HabitatSeries monthly_series(std::span<const HabitatMap> maps, const PolygonSet& zones) {
    std::set<std::pair<int, int>> seen;
    for (const auto& map : maps) {
        if (!seen.emplace(map.year, map.month).second)
            throw InvalidArgument("duplicate map for " + std::to_string(map.year) + "-" +
                                  std::to_string(map.month));
    }

    HabitatSeries series;
    for (const auto& zone : zones.polygons) series.zone_names.push_back(zone.name);
    for (const auto& map : maps) {
        SeriesEntry entry;
        entry.year = map.year;
        entry.month = map.month;
        entry.total_km2 = suitable_area_km2(map);
        entry.zone_km2.reserve(zones.polygons.size());
        for (const auto& zone : zones.polygons)
            entry.zone_km2.push_back(suitable_area_km2(map, &zone));
        series.entries.push_back(std::move(entry));
    }
    std::sort(series.entries.begin(), series.entries.end(), [](const auto& a, const auto& b) {
        return std::pair{a.year, a.month} < std::pair{b.year, b.month};
    });
    return series;
}

std::vector<std::pair<int, double>> percent_change(const HabitatSeries& series, int baseline_year,
                                                   std::optional<std::size_t> zone_index) {
    if (zone_index && *zone_index >= series.zone_names.size())
        throw InvalidArgument("zone index out of range");
    std::map<int, std::pair<double, int>> annual;  // year -> (area sum, month count)
    for (const auto& entry : series.entries) {
        const double area = zone_index ? entry.zone_km2[*zone_index] : entry.total_km2;
        auto& [sum, count] = annual[entry.year];
        sum += area;
        ++count;
    }
    const auto base = annual.find(baseline_year);
    if (base == annual.end())
        throw InvalidArgument("baseline year " + std::to_string(baseline_year) +
                              " is not present in the series");
    const double base_area = base->second.first / base->second.second;
    if (!(base_area > 0.0))
        throw InvalidArgument("baseline year " + std::to_string(baseline_year) +
                              " has zero suitable area");
    std::vector<std::pair<int, double>> changes;
    changes.reserve(annual.size());
    for (const auto& [year, acc] : annual) {
        const double mean = acc.first / acc.second;
        changes.emplace_back(year, 100.0 * (mean - base_area) / base_area);
    }
    return changes;
}

std::string write_series(const HabitatSeries& series, char delimiter) {
    std::string out = "year";
    out += delimiter;
    out += "month";
    out += delimiter;
    out += "total_km2";
    for (const auto& zone : series.zone_names) {
        out += delimiter;
        out += zone + "_km2";
    }
    out += '\n';
    for (const auto& entry : series.entries) {
        out += std::to_string(entry.year);
        out += delimiter;
        out += std::to_string(entry.month);
        out += delimiter;
        out += format_double(entry.total_km2);
        for (const auto& area : entry.zone_km2) {
            out += delimiter;
            out += format_double(area);
        }
        out += '\n';
    }
    return out;
}

HabitatSeries parse_series(std::string_view text, char delimiter) {
    std::size_t pos = 0;
    std::size_t line_no = 0;
    auto next_line = [&](std::string_view& line) {
        if (pos > text.size()) return false;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = end + 1;
        ++line_no;
        return true;
    };
    auto split = [&](std::string_view line) {
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == delimiter) {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        return fields;
    };
    auto number = [&](std::string_view field) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v))
            throw ParseError("invalid number '" + std::string(field) + "'", line_no, 1);
        return v;
    };

    std::string_view header;
    if (!next_line(header)) throw ParseError("series file is empty", 1, 1);
    const auto columns = split(header);
    if (columns.size() < 3 || columns[0] != "year" || columns[1] != "month" ||
        columns[2] != "total_km2")
        throw ParseError("series header must start with year, month, total_km2", 1, 1);

    HabitatSeries series;
    for (std::size_t i = 3; i < columns.size(); ++i) {
        std::string name(columns[i]);
        if (name.size() > 4 && name.ends_with("_km2")) name.resize(name.size() - 4);
        series.zone_names.push_back(std::move(name));
    }
    std::string_view line;
    while (next_line(line)) {
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != columns.size())
            throw ParseError("expected " + std::to_string(columns.size()) + " fields", line_no, 1);
        SeriesEntry entry;
        entry.year = static_cast<int>(number(fields[0]));
        entry.month = static_cast<int>(number(fields[1]));
        entry.total_km2 = number(fields[2]);
        for (std::size_t i = 3; i < fields.size(); ++i)
            entry.zone_km2.push_back(number(fields[i]));
        series.entries.push_back(std::move(entry));
    }
    return series;
}

std::string render_map_image(const HabitatMap& map, RenderMode mode) {
    const Grid& source = mode == RenderMode::probability ? map.probability : map.binary;
    const int w = source.ncols();
    const int h = source.nrows();
    std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(w) * h * 3);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            unsigned char rgb[3] = {128, 128, 128};  // nodata gray
            if (const auto v = source.value(r, c)) {
                if (mode == RenderMode::probability) {
                    const double p = std::clamp(*v, 0.0, 1.0);
                    const auto fade =
                        static_cast<unsigned char>(std::lround((1.0 - p) * 255.0));
                    rgb[0] = 255;
                    rgb[1] = fade;
                    rgb[2] = fade;
                } else if (*v == 1.0) {
                    rgb[0] = 255;
                    rgb[1] = 0;
                    rgb[2] = 0;
                } else {
                    rgb[0] = rgb[1] = rgb[2] = 255;
                }
            }
            out.append(reinterpret_cast<const char*>(rgb), 3);
        }
    }
    return out;
}

}  // namespace habitat
