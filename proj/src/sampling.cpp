#include "sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"
#include "log.hpp"
#include "rng.hpp"

namespace habitat {

std::vector<LonLat> pseudo_presence(const OccurrenceRecord& rec, int k, std::uint64_t seed,
                                    double default_uncertainty_m) {
    if (k < 0) throw InvalidArgument("pseudo-presence count must be >= 0");
    const double radius = rec.uncertainty_m.value_or(default_uncertainty_m);
    const LonLat origin{rec.longitude, rec.latitude};
    Rng rng(seed);
    std::vector<LonLat> points;
    points.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        // sqrt makes the draw uniform in area over the disk.
        const double distance = radius * std::sqrt(rng.next_double());
        const double bearing = 2.0 * M_PI * rng.next_double();
        points.push_back(geo::offset_local(origin, distance, bearing));
    }
    return points;
}

namespace {

double min_boundary_distance_m(LonLat p, const PolygonSet& set) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& poly : set.polygons)
        for (const auto& ring : poly.rings)
            for (std::size_t i = 0; i + 1 < ring.vertices.size(); ++i)
                best = std::min(best, geo::point_segment_distance_m(p, ring.vertices[i],
                                                                    ring.vertices[i + 1]));
    return best;
}

}  // namespace

std::vector<LonLat> pseudo_absence(const PolygonSet& range_maps, const GridSpec& region,
                                   const Grid& valid_mask, int n, double buffer_m,
                                   std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("pseudo-absence count must be >= 1");
    if (valid_mask.spec() != region)
        throw InvalidArgument("valid mask does not conform to the study region");

    std::vector<LonLat> eligible;
    for (int r = 0; r < region.nrows; ++r) {
        for (int c = 0; c < region.ncols; ++c) {
            const auto v = valid_mask.value(r, c);
            if (!v || *v == 0.0) continue;
            const LonLat center = region.center(r, c);
            if (point_in_polygonset(center, range_maps)) continue;
            if (buffer_m > 0.0 && min_boundary_distance_m(center, range_maps) < buffer_m)
                continue;
            eligible.push_back(center);
        }
    }
    if (eligible.size() < static_cast<std::size_t>(n))
        throw Error("only " + std::to_string(eligible.size()) +
                    " cells are eligible for pseudo-absence sampling, " + std::to_string(n) +
                    " requested");

    Rng rng(seed);
    const auto picks = rng.sample_without_replacement(eligible.size(), static_cast<std::size_t>(n));
    std::vector<LonLat> points;
    points.reserve(picks.size());
    for (const auto i : picks) points.push_back(eligible[i]);
    return points;
}

LabeledDataset extract_features(std::span<const ExtractPoint> points, const StackStore& stacks,
                                ExtractStats* stats, MissingStackPolicy policy) {
    ExtractStats local;
    ExtractStats& st = stats ? *stats : local;
    st = ExtractStats{};

    LabeledDataset ds;
    ds.feature_names = stacks.layer_names();
    for (const auto& point : points) {
        if (!point.year || !point.month) {
            ++st.dropped_no_date;
            continue;
        }
        const FeatureStack* stack = stacks.find(*point.year, *point.month);
        if (stack == nullptr) {
            if (policy == MissingStackPolicy::error)
                throw Error("no stack available for " + std::to_string(*point.year) + "-" +
                            std::to_string(*point.month));
            ++st.dropped_missing_stack;
            continue;
        }
        LabeledSample sample;
        sample.features.reserve(stack->layers.size());
        bool complete = true;
        for (const auto& layer : stack->layers) {
            const auto v = sample_at(layer, point.location);
            if (!v) {
                complete = false;
                break;
            }
            sample.features.push_back(*v);
        }
        if (!complete) {
            ++st.dropped_nodata;
            continue;
        }
        sample.label = point.label;
        sample.provenance = point.provenance;
        sample.location = point.location;
        sample.year = *point.year;
        sample.month = *point.month;
        ds.samples.push_back(std::move(sample));
    }
    return ds;
}

std::pair<LabeledDataset, LabeledDataset> split_70_30(const LabeledDataset& ds,
                                                      std::uint64_t seed) {
    constexpr long kTrainPercent = 70;

    std::array<std::vector<std::uint32_t>, 2> members;
    for (std::size_t i = 0; i < ds.size(); ++i)
        members[ds.samples[i].label == 1 ? 1 : 0].push_back(static_cast<std::uint32_t>(i));
    for (int label = 0; label <= 1; ++label) {
        if (members[label].size() < 2)
            throw InvalidArgument("class " + std::to_string(label) + " has " +
                                  std::to_string(members[label].size()) +
                                  " samples; need at least 2 to split");
    }

    // Integer largest-remainder allocation: train_c in {floor, ceil} of 70%
    // per class and the total equals round(0.7 n).
    const long total_target =
        (kTrainPercent * static_cast<long>(ds.size()) + 50) / 100;
    std::array<long, 2> train_count;
    std::array<long, 2> remainder;
    for (int label = 0; label <= 1; ++label) {
        const long m = static_cast<long>(members[label].size());
        train_count[label] = kTrainPercent * m / 100;
        remainder[label] = kTrainPercent * m % 100;
    }
    long assigned = train_count[0] + train_count[1];
    while (assigned < total_target) {
        int pick = remainder[0] >= remainder[1] ? 0 : 1;
        if (train_count[pick] + 1 >= static_cast<long>(members[pick].size())) pick = 1 - pick;
        ++train_count[pick];
        remainder[pick] = -1;
        ++assigned;
    }
    for (int label = 0; label <= 1; ++label)
        train_count[label] =
            std::clamp(train_count[label], long{1}, static_cast<long>(members[label].size()) - 1);

    std::vector<bool> to_train(ds.size(), false);
    for (int label = 0; label <= 1; ++label) {
        auto shuffled = members[label];
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(label)));
        rng.shuffle(shuffled);
        for (long i = 0; i < train_count[label]; ++i) to_train[shuffled[i]] = true;
    }

    LabeledDataset train, test;
    train.feature_names = ds.feature_names;
    test.feature_names = ds.feature_names;
    for (std::size_t i = 0; i < ds.size(); ++i)
        (to_train[i] ? train : test).samples.push_back(ds.samples[i]);
    log_debug("split: " + std::to_string(train.size()) + " train / " + std::to_string(test.size()) +
              " test");
    return {std::move(train), std::move(test)};
}

}  // namespace habitat
