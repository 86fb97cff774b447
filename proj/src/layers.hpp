#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "grid.hpp"

namespace habitat {

/// One manifest entry binding a raster file to a stack layer. Static layers
/// are reused for every (year, month); monthly layers belong to one.
struct LayerEntry {
    std::string name;
    std::filesystem::path path;
    GridKind kind = GridKind::continuous;
    bool is_static = true;
    int year = 0;   // monthly layers only
    int month = 0;
};

/// Parses the layer manifest: a JSON document
///   {"layers": [{"name", "path", "kind": "continuous"|"categorical",
///                "temporal": {"type": "static"} |
///                            {"type": "monthly", "year": Y, "month": M}}]}
/// Relative paths are resolved against the manifest's directory.
std::vector<LayerEntry> parse_layer_manifest(const std::filesystem::path& manifest_path);

/// Loads every referenced raster, resamples layers onto `target` (nearest
/// for categorical, bilinear for continuous) and assembles one FeatureStack
/// per (year, month) found among the monthly entries. Layer order is the
/// order of first appearance in the manifest. Every (year, month) must carry
/// all monthly layer names.
class StackStore {
public:
    static StackStore load(const std::filesystem::path& manifest_path, const GridSpec& target,
                           bool climatology_fallback = false);

    const GridSpec& spec() const { return spec_; }
    const std::vector<std::string>& layer_names() const { return layer_names_; }

    /// Sorted (year, month) keys with an exact stack.
    std::vector<std::pair<int, int>> keys() const;

    /// Exact (year, month) stack; with the climatology fallback enabled, the
    /// per-month mean stack when the exact one is missing. Null when neither
    /// exists.
    const FeatureStack* find(int year, int month) const;

    /// 1 where every layer of every stack is valid, 0 elsewhere.
    Grid valid_intersection() const;

private:
    GridSpec spec_;
    std::vector<std::string> layer_names_;
    std::map<std::pair<int, int>, FeatureStack> stacks_;
    std::map<int, FeatureStack> climatology_;  // by month, when fallback enabled
};

}  // namespace habitat
