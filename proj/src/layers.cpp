#include "layers.hpp"

#include <set>

#include <json.hpp>

#include "ascii_grid.hpp"
#include "error.hpp"
#include "log.hpp"

namespace habitat {

std::vector<LayerEntry> parse_layer_manifest(const std::filesystem::path& manifest_path) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(read_text_file(manifest_path));
    } catch (const json::parse_error& e) {
        throw ParseError(manifest_path.string() + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("layers") || !doc["layers"].is_array())
        throw ParseError(manifest_path.string() + ": expected an object with a layers array");

    const auto base = manifest_path.parent_path();
    std::vector<LayerEntry> entries;
    for (const auto& item : doc["layers"]) {
        try {
            LayerEntry entry;
            entry.name = item.at("name").get<std::string>();
            std::filesystem::path p = item.at("path").get<std::string>();
            entry.path = p.is_absolute() ? p : base / p;
            const std::string kind = item.at("kind").get<std::string>();
            if (kind == "continuous") entry.kind = GridKind::continuous;
            else if (kind == "categorical") entry.kind = GridKind::categorical;
            else throw ParseError("layer '" + entry.name + "': unknown kind '" + kind + "'");
            const auto& temporal = item.at("temporal");
            const std::string type = temporal.at("type").get<std::string>();
            if (type == "static") {
                entry.is_static = true;
            } else if (type == "monthly") {
                entry.is_static = false;
                entry.year = temporal.at("year").get<int>();
                entry.month = temporal.at("month").get<int>();
                if (entry.month < 1 || entry.month > 12)
                    throw ParseError("layer '" + entry.name + "': month out of range");
            } else {
                throw ParseError("layer '" + entry.name + "': unknown temporal type '" + type +
                                 "'");
            }
            entries.push_back(std::move(entry));
        } catch (const json::exception& e) {
            throw ParseError(manifest_path.string() + ": malformed layer entry: " + e.what());
        }
    }
    if (entries.empty()) throw ParseError(manifest_path.string() + ": manifest lists no layers");
    return entries;
}

StackStore StackStore::load(const std::filesystem::path& manifest_path, const GridSpec& target,
                            bool climatology_fallback) {
    target.validate();
    const auto entries = parse_layer_manifest(manifest_path);

    StackStore store;
    store.spec_ = target;

    // Layer order is first appearance; a name must stay static or monthly.
    std::map<std::string, bool> is_static;
    for (const auto& e : entries) {
        const auto it = is_static.find(e.name);
        if (it == is_static.end()) {
            is_static.emplace(e.name, e.is_static);
            store.layer_names_.push_back(e.name);
        } else if (it->second != e.is_static) {
            throw ParseError("layer '" + e.name + "' is declared both static and monthly");
        }
    }

    std::map<std::string, Grid> static_layers;
    std::map<std::pair<int, int>, std::map<std::string, Grid>> monthly;
    std::set<std::pair<int, int>> periods;
    for (const auto& e : entries) {
        const ResampleMethod method =
            e.kind == GridKind::categorical ? ResampleMethod::nearest : ResampleMethod::bilinear;
        Grid resampled = resample(read_ascii_grid(e.path, e.kind), target, method);
        if (e.is_static) {
            if (!static_layers.emplace(e.name, std::move(resampled)).second)
                throw ParseError("static layer '" + e.name + "' appears twice in the manifest");
        } else {
            const auto key = std::make_pair(e.year, e.month);
            periods.insert(key);
            if (!monthly[key].emplace(e.name, std::move(resampled)).second)
                throw ParseError("monthly layer '" + e.name + "' appears twice for " +
                                 std::to_string(e.year) + "-" + std::to_string(e.month));
        }
    }

    if (periods.empty()) {
        // All-static manifests still form a single usable stack, keyed (0, 0).
        periods.insert({0, 0});
    }
    for (const auto& [year, month] : periods) {
        FeatureStack stack;
        stack.spec = target;
        stack.year = year;
        stack.month = month;
        for (const auto& name : store.layer_names_) {
            if (is_static[name]) {
                stack.names.push_back(name);
                stack.layers.push_back(static_layers.at(name));
                continue;
            }
            const auto period_it = monthly.find({year, month});
            if (period_it != monthly.end()) {
                const auto layer_it = period_it->second.find(name);
                if (layer_it != period_it->second.end()) {
                    stack.names.push_back(name);
                    stack.layers.push_back(layer_it->second);
                    continue;
                }
            }
            throw ParseError("manifest is missing monthly layer '" + name + "' for " +
                             std::to_string(year) + "-" + std::to_string(month));
        }
        store.stacks_.emplace(std::make_pair(year, month), std::move(stack));
    }
    log_info("loaded " + std::to_string(store.stacks_.size()) + " stack(s) of " +
             std::to_string(store.layer_names_.size()) + " layer(s)");

    if (climatology_fallback) {
        std::set<int> months;
        for (const auto& [key, stack] : store.stacks_) months.insert(key.second);
        for (const int month : months) {
            FeatureStack mean_stack;
            mean_stack.spec = target;
            mean_stack.year = 0;
            mean_stack.month = month;
            mean_stack.names = store.layer_names_;
            for (std::size_t li = 0; li < store.layer_names_.size(); ++li) {
                Grid mean(target, GridKind::continuous);
                std::vector<int> counts(target.cell_count(), 0);
                std::vector<double> sums(target.cell_count(), 0.0);
                for (const auto& [key, stack] : store.stacks_) {
                    if (key.second != month) continue;
                    const Grid& layer = stack.layers[li];
                    for (int r = 0; r < target.nrows; ++r)
                        for (int c = 0; c < target.ncols; ++c)
                            if (const auto v = layer.value(r, c)) {
                                const std::size_t i =
                                    static_cast<std::size_t>(r) * target.ncols + c;
                                sums[i] += *v;
                                ++counts[i];
                            }
                }
                for (int r = 0; r < target.nrows; ++r)
                    for (int c = 0; c < target.ncols; ++c) {
                        const std::size_t i = static_cast<std::size_t>(r) * target.ncols + c;
                        if (counts[i] > 0) mean.set(r, c, sums[i] / counts[i]);
                    }
                mean_stack.layers.push_back(std::move(mean));
            }
            store.climatology_.emplace(month, std::move(mean_stack));
        }
    }
    return store;
}

std::vector<std::pair<int, int>> StackStore::keys() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(stacks_.size());
    for (const auto& [key, stack] : stacks_) out.push_back(key);
    return out;
}

const FeatureStack* StackStore::find(int year, int month) const {
    const auto it = stacks_.find({year, month});
    if (it != stacks_.end()) return &it->second;
    const auto clim = climatology_.find(month);
    if (clim != climatology_.end()) return &clim->second;
    return nullptr;
}

Grid StackStore::valid_intersection() const {
    Grid mask = Grid::constant(spec_, 1.0);
    for (const auto& [key, stack] : stacks_) {
        for (const auto& layer : stack.layers) {
            for (int r = 0; r < spec_.nrows; ++r)
                for (int c = 0; c < spec_.ncols; ++c)
                    if (layer.is_nodata(r, c)) mask.set(r, c, 0.0);
        }
    }
    return mask;
}

}  // namespace habitat
