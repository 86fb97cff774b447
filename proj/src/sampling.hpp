#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "layers.hpp"
#include "occurrence.hpp"
#include "polygons.hpp"

namespace habitat {

/// k points uniform in area over the geodesic disk of radius
/// rec.uncertainty_m (or default_uncertainty_m when absent) around the
/// record: distance r*sqrt(u), bearing uniform. Every point lies within the
/// radius in great-circle distance; deterministic given the seed.
std::vector<LonLat> pseudo_presence(const OccurrenceRecord& rec, int k, std::uint64_t seed,
                                    double default_uncertainty_m = 1000.0);

/// n cell-center points drawn uniformly without replacement from the cells
/// of `region` that are valid in `valid_mask` (non-nodata and non-zero),
/// whose centers lie outside every polygon of `range_maps`, and (for
/// buffer_m > 0) at least buffer_m from every polygon boundary. Fewer
/// eligible cells than n is an error reporting the eligible count.
std::vector<LonLat> pseudo_absence(const PolygonSet& range_maps, const GridSpec& region,
                                   const Grid& valid_mask, int n, double buffer_m,
                                   std::uint64_t seed);

/// Extraction input: a labeled point bound to the stack of its (year, month).
struct ExtractPoint {
    LonLat location;
    int label = 0;
    Provenance provenance = Provenance::presence;
    std::optional<int> year;
    std::optional<int> month;
};

enum class MissingStackPolicy { error, skip };

struct ExtractStats {
    std::size_t dropped_nodata = 0;        // point hit nodata in some layer (or fell outside)
    std::size_t dropped_no_date = 0;       // point carried no usable (year, month)
    std::size_t dropped_missing_stack = 0; // only under MissingStackPolicy::skip
};

/// One sample per surviving point, in input order, with features sampled
/// from the point's (year, month) stack. Points hitting nodata are dropped
/// and counted. A missing stack is an error naming the (year, month) unless
/// the policy says skip (the store may also serve climatological fallbacks).
LabeledDataset extract_features(std::span<const ExtractPoint> points, const StackStore& stacks,
                                ExtractStats* stats = nullptr,
                                MissingStackPolicy policy = MissingStackPolicy::error);

/// Stratified 70/30 split: per class the train share is the floor/ceil of
/// 70%, allocated by largest remainder so the overall train count is
/// round(0.7 n); every class keeps at least one sample on each side.
/// Deterministic given the seed. Classes with fewer than 2 samples are an
/// error.
std::pair<LabeledDataset, LabeledDataset> split_70_30(const LabeledDataset& ds,
                                                      std::uint64_t seed);

}  // namespace habitat
