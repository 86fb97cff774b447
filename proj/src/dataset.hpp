#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geodesy.hpp"

namespace habitat {

enum class Provenance { presence, pseudo_presence, pseudo_absence };

std::string_view provenance_name(Provenance p);
Provenance provenance_from_name(std::string_view name);

struct LabeledSample {
    std::vector<double> features;
    int label = 0;  // 1 presence, 0 absence
    Provenance provenance = Provenance::presence;
    LonLat location;
    int year = 0;
    int month = 0;
};

struct LabeledDataset {
    std::vector<std::string> feature_names;
    std::vector<LabeledSample> samples;

    std::size_t size() const { return samples.size(); }
    std::size_t n_features() const { return feature_names.size(); }

    /// {absence count, presence count}.
    std::array<std::size_t, 2> class_counts() const;

    /// Dataset restricted to `names`, in that order. Throws InvalidArgument
    /// when a name is missing.
    LabeledDataset select_features(std::span<const std::string> names) const;
};

/// Delimited text with header: feature columns, then
/// label, provenance, lon, lat, year, month.
std::string write_dataset(const LabeledDataset& ds, char delimiter);
LabeledDataset parse_dataset(std::string_view text, char delimiter);

}  // namespace habitat
