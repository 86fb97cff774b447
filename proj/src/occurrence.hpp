#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace habitat {

/// One species sighting. year/month are absent when the source row carried
/// no usable eventDate; such records are excluded from month-resolved
/// feature extraction downstream.
struct OccurrenceRecord {
    double latitude = 0.0;
    double longitude = 0.0;
    std::optional<int> year;
    std::optional<int> month;
    std::optional<double> uncertainty_m;
};

struct OccurrenceParseStats {
    std::size_t rows_total = 0;
    std::size_t skipped_bad_coordinates = 0;   // missing or unparseable lat/lon
    std::size_t skipped_out_of_range = 0;      // lat/lon outside valid ranges
    std::size_t missing_uncertainty = 0;
    std::size_t dateless = 0;                  // kept, but with year/month absent
};

/// Parses a delimited occurrence table. The first line is a header that must
/// contain decimalLatitude, decimalLongitude, eventDate and
/// coordinateUncertaintyInMeters (any order, extra columns ignored, names
/// matched case-insensitively). eventDate is read as an ISO-8601 prefix:
/// YYYY, YYYY-MM or YYYY-MM-DD. Rows with missing or invalid coordinates are
/// skipped and counted; a missing mandatory column is fatal.
std::vector<OccurrenceRecord> parse_occurrences(std::string_view text, char delimiter,
                                                OccurrenceParseStats* stats = nullptr);

}  // namespace habitat
