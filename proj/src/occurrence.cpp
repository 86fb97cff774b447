#include "occurrence.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "error.hpp"
#include "log.hpp"

namespace habitat {

namespace {

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

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::optional<double> parse_double_field(std::string_view field) {
    // Tolerate surrounding spaces, as exported tables sometimes pad fields.
    while (!field.empty() && (field.front() == ' ' || field.front() == '\r')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.remove_suffix(1);
    if (field.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

/// ISO-8601 prefix: YYYY, YYYY-MM or YYYY-MM-DD; anything after a valid
/// prefix (time suffix, date ranges) is ignored.
void parse_event_date(std::string_view field, std::optional<int>& year,
                      std::optional<int>& month) {
    year.reset();
    month.reset();
    auto digits = [&](std::size_t pos, std::size_t count) -> std::optional<int> {
        if (field.size() < pos + count) return std::nullopt;
        int value = 0;
        for (std::size_t i = pos; i < pos + count; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(field[i]))) return std::nullopt;
            value = value * 10 + (field[i] - '0');
        }
        return value;
    };
    const auto y = digits(0, 4);
    if (!y || *y < 1900 || *y > 2100) return;
    // A fifth leading digit would mean this is not a 4-digit year.
    if (field.size() > 4 && std::isdigit(static_cast<unsigned char>(field[4]))) return;
    year = *y;
    if (field.size() >= 7 && field[4] == '-') {
        const auto m = digits(5, 2);
        if (m && *m >= 1 && *m <= 12 &&
            (field.size() == 7 || !std::isdigit(static_cast<unsigned char>(field[7]))))
            month = *m;
    }
}

}  // namespace

std::vector<OccurrenceRecord> parse_occurrences(std::string_view text, char delimiter,
                                                OccurrenceParseStats* stats) {
    OccurrenceParseStats local;
    OccurrenceParseStats& st = stats ? *stats : local;
    st = OccurrenceParseStats{};

    std::size_t line_no = 0;
    std::size_t pos = 0;
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
        throw ParseError("occurrence table is missing its header line", 1, 1);

    const auto columns = split_line(header, delimiter);
    int lat_col = -1, lon_col = -1, date_col = -1, unc_col = -1;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        const std::string name = lower(columns[i]);
        if (name == "decimallatitude") lat_col = static_cast<int>(i);
        else if (name == "decimallongitude") lon_col = static_cast<int>(i);
        else if (name == "eventdate") date_col = static_cast<int>(i);
        else if (name == "coordinateuncertaintyinmeters") unc_col = static_cast<int>(i);
    }
    for (const auto& [col, name] :
         {std::pair{lat_col, "decimalLatitude"}, {lon_col, "decimalLongitude"},
          {date_col, "eventDate"}, {unc_col, "coordinateUncertaintyInMeters"}}) {
        if (col < 0)
            throw ParseError(std::string("missing mandatory column '") + name + "'", 1, 1);
    }

    std::vector<OccurrenceRecord> records;
    std::string_view line;
    while (next_line(line)) {
        if (line.empty()) continue;
        ++st.rows_total;
        const auto fields = split_line(line, delimiter);
        auto field = [&](int col) -> std::string_view {
            return col < static_cast<int>(fields.size()) ? fields[col] : std::string_view{};
        };
        const auto lat = parse_double_field(field(lat_col));
        const auto lon = parse_double_field(field(lon_col));
        if (!lat || !lon) {
            ++st.skipped_bad_coordinates;
            continue;
        }
        if (*lat < -90.0 || *lat > 90.0 || *lon < -180.0 || *lon > 180.0) {
            ++st.skipped_out_of_range;
            log_debug("occurrence row " + std::to_string(line_no) +
                      " skipped: coordinates out of range");
            continue;
        }
        OccurrenceRecord rec;
        rec.latitude = *lat;
        rec.longitude = *lon;
        parse_event_date(field(date_col), rec.year, rec.month);
        if (!rec.year) ++st.dateless;
        const auto unc = parse_double_field(field(unc_col));
        if (unc && *unc >= 0.0) {
            rec.uncertainty_m = *unc;
        } else {
            ++st.missing_uncertainty;
        }
        records.push_back(rec);
    }
    return records;
}

}  // namespace habitat
