#include "dataset.hpp"

#include <charconv>
#include <cmath>

#include "ascii_grid.hpp"
#include "error.hpp"

namespace habitat {

std::string_view provenance_name(Provenance p) {
    switch (p) {
        case Provenance::presence: return "presence";
        case Provenance::pseudo_presence: return "pseudo-presence";
        case Provenance::pseudo_absence: return "pseudo-absence";
    }
    return "presence";
}

Provenance provenance_from_name(std::string_view name) {
    if (name == "presence") return Provenance::presence;
    if (name == "pseudo-presence") return Provenance::pseudo_presence;
    if (name == "pseudo-absence") return Provenance::pseudo_absence;
    throw ParseError("unknown provenance '" + std::string(name) + "'");
}

std::array<std::size_t, 2> LabeledDataset::class_counts() const {
    std::array<std::size_t, 2> counts{0, 0};
    for (const auto& s : samples) ++counts[s.label == 1 ? 1 : 0];
    return counts;
}

LabeledDataset LabeledDataset::select_features(std::span<const std::string> names) const {
    std::vector<std::size_t> indices;
    indices.reserve(names.size());
    for (const auto& name : names) {
        bool found = false;
        for (std::size_t i = 0; i < feature_names.size(); ++i) {
            if (feature_names[i] == name) {
                indices.push_back(i);
                found = true;
                break;
            }
        }
        if (!found) throw InvalidArgument("dataset has no feature named '" + name + "'");
    }
    LabeledDataset out;
    out.feature_names.assign(names.begin(), names.end());
    out.samples.reserve(samples.size());
    for (const auto& s : samples) {
        LabeledSample copy = s;
        copy.features.clear();
        copy.features.reserve(indices.size());
        for (const auto i : indices) copy.features.push_back(s.features[i]);
        out.samples.push_back(std::move(copy));
    }
    return out;
}

namespace {

constexpr const char* kTrailerColumns[6] = {"label", "provenance", "lon", "lat", "year", "month"};

std::vector<std::string_view> split_line(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == delimiter) {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

double parse_number(std::string_view field, std::size_t line_no, const char* what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v))
        throw ParseError(std::string("invalid ") + what + " '" + std::string(field) + "'",
                         line_no, 1);
    return v;
}

}  // namespace

std::string write_dataset(const LabeledDataset& ds, char delimiter) {
    std::string out;
    for (const auto& name : ds.feature_names) {
        out += name;
        out += delimiter;
    }
    for (int i = 0; i < 6; ++i) {
        out += kTrailerColumns[i];
        out += (i < 5) ? std::string(1, delimiter) : "\n";
    }
    for (const auto& s : ds.samples) {
        for (const auto& v : s.features) {
            out += format_double(v);
            out += delimiter;
        }
        out += std::to_string(s.label);
        out += delimiter;
        out += provenance_name(s.provenance);
        out += delimiter;
        out += format_double(s.location.lon);
        out += delimiter;
        out += format_double(s.location.lat);
        out += delimiter;
        out += std::to_string(s.year);
        out += delimiter;
        out += std::to_string(s.month);
        out += '\n';
    }
    return out;
}

LabeledDataset parse_dataset(std::string_view text, char delimiter) {
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

    std::string_view header;
    if (!next_line(header) || header.empty())
        throw ParseError("dataset is missing its header line", 1, 1);
    const auto columns = split_line(header, delimiter);
    if (columns.size() < 6)
        throw ParseError("dataset header has fewer than the 6 trailer columns", 1, 1);
    const std::size_t n_features = columns.size() - 6;
    for (int i = 0; i < 6; ++i) {
        if (columns[n_features + i] != kTrailerColumns[i])
            throw ParseError(std::string("expected trailer column '") + kTrailerColumns[i] +
                                 "', got '" + std::string(columns[n_features + i]) + "'",
                             1, 1);
    }
    LabeledDataset ds;
    for (std::size_t i = 0; i < n_features; ++i) ds.feature_names.emplace_back(columns[i]);

    std::string_view line;
    while (next_line(line)) {
        if (line.empty()) continue;
        const auto fields = split_line(line, delimiter);
        if (fields.size() != columns.size())
            throw ParseError("expected " + std::to_string(columns.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no, 1);
        LabeledSample s;
        s.features.reserve(n_features);
        for (std::size_t i = 0; i < n_features; ++i)
            s.features.push_back(parse_number(fields[i], line_no, "feature value"));
        const double label = parse_number(fields[n_features], line_no, "label");
        if (label != 0.0 && label != 1.0)
            throw ParseError("label must be 0 or 1", line_no, 1);
        s.label = static_cast<int>(label);
        s.provenance = provenance_from_name(fields[n_features + 1]);
        s.location.lon = parse_number(fields[n_features + 2], line_no, "lon");
        s.location.lat = parse_number(fields[n_features + 3], line_no, "lat");
        s.year = static_cast<int>(parse_number(fields[n_features + 4], line_no, "year"));
        s.month = static_cast<int>(parse_number(fields[n_features + 5], line_no, "month"));
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

}  // namespace habitat
