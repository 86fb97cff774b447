#include "config.hpp"

#include <json.hpp>

#include "ascii_grid.hpp"
#include "error.hpp"

namespace habitat {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

char parse_delimiter(const std::string& s) {
    if (s == "tab" || s == "\\t") return '\t';
    if (s.size() == 1) return s[0];
    throw ParseError("delimiter must be a single character or 'tab', got '" + s + "'");
}

}  // namespace

RunConfig RunConfig::parse(std::string_view text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid config JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config must be a JSON object");

    RunConfig cfg;
    try {
        if (!doc.contains("master_seed") || !doc["master_seed"].is_number())
            throw ParseError("config requires a numeric master_seed; runs must be reproducible");
        cfg.master_seed = doc["master_seed"].get<std::uint64_t>();

        const auto& paths = doc.at("paths");
        cfg.paths.output_dir = resolve(base_dir, paths.at("output_dir").get<std::string>());
        if (paths.contains("occurrences"))
            cfg.paths.occurrences = resolve(base_dir, paths["occurrences"].get<std::string>());
        if (paths.contains("layer_manifest"))
            cfg.paths.layer_manifest =
                resolve(base_dir, paths["layer_manifest"].get<std::string>());
        if (paths.contains("range_map"))
            cfg.paths.range_map = resolve(base_dir, paths["range_map"].get<std::string>());
        if (paths.contains("zones"))
            cfg.paths.zones = resolve(base_dir, paths["zones"].get<std::string>());

        if (doc.contains("grid")) {
            const auto& g = doc["grid"];
            GridSpec spec;
            spec.ncols = g.at("ncols").get<int>();
            spec.nrows = g.at("nrows").get<int>();
            spec.xllcorner = g.at("xllcorner").get<double>();
            spec.yllcorner = g.at("yllcorner").get<double>();
            spec.cellsize = g.value("cellsize", 0.1);
            spec.validate();
            cfg.grid = spec;
        }

        if (doc.contains("sampling")) {
            const auto& s = doc["sampling"];
            cfg.sampling.k_pseudo_presence = s.value("k_pseudo_presence", 2);
            cfg.sampling.default_uncertainty_m = s.value("default_uncertainty_m", 1000.0);
            cfg.sampling.n_pseudo_absence = s.value("n_pseudo_absence", 0);
            cfg.sampling.buffer_m = s.value("buffer_m", 0.0);
            cfg.sampling.use_climatology_fallback = s.value("use_climatology_fallback", false);
            cfg.sampling.skip_unmatched_months = s.value("skip_unmatched_months", false);
            if (cfg.sampling.k_pseudo_presence < 0)
                throw ParseError("k_pseudo_presence must be >= 0");
            if (cfg.sampling.default_uncertainty_m < 0.0)
                throw ParseError("default_uncertainty_m must be >= 0");
            if (cfg.sampling.buffer_m < 0.0) throw ParseError("buffer_m must be >= 0");
        }

        if (doc.contains("forest")) {
            const auto& f = doc["forest"];
            cfg.forest.n_estimators = f.value("n_estimators", 500);
            cfg.forest.max_features = f.value("max_features", 2);
            cfg.forest.max_depth = f.value("max_depth", 22);
            cfg.forest.min_samples_split = f.value("min_samples_split", 2);
            cfg.forest.min_samples_leaf = f.value("min_samples_leaf", 1);
        }

        if (doc.contains("tune")) {
            const auto& t = doc["tune"];
            if (t.contains("n_estimators"))
                cfg.tune.n_estimators = t["n_estimators"].get<std::vector<int>>();
            if (t.contains("max_features"))
                cfg.tune.max_features = t["max_features"].get<std::vector<int>>();
            if (t.contains("max_depth")) cfg.tune.max_depth = t["max_depth"].get<std::vector<int>>();
            cfg.tune.folds = t.value("folds", 5);
        }

        if (doc.contains("analysis")) {
            const auto& a = doc["analysis"];
            if (a.contains("baseline_year") && a["baseline_year"].is_number())
                cfg.analysis.baseline_year = a["baseline_year"].get<int>();
        }

        if (doc.contains("synth")) {
            const auto& s = doc["synth"];
            cfg.synth.ncols = s.value("ncols", 60);
            cfg.synth.nrows = s.value("nrows", 60);
            cfg.synth.xllcorner = s.value("xllcorner", 70.0);
            cfg.synth.yllcorner = s.value("yllcorner", 8.0);
            cfg.synth.cellsize = s.value("cellsize", 0.25);
            if (s.contains("years")) cfg.synth.years = s["years"].get<std::vector<int>>();
            cfg.synth.n_occurrences = s.value("n_occurrences", 300);
            if (cfg.synth.years.empty()) throw ParseError("synth.years must be non-empty");
            if (cfg.synth.n_occurrences < 1) throw ParseError("synth.n_occurrences must be >= 1");
        }

        cfg.threshold = doc.value("threshold", 0.5);
        if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0))
            throw ParseError("threshold must lie in (0, 1)");
        if (doc.contains("delimiter"))
            cfg.delimiter = parse_delimiter(doc["delimiter"].get<std::string>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    auto absolute = std::filesystem::absolute(path);
    return parse(read_text_file(absolute), absolute.parent_path());
}

}  // namespace habitat
