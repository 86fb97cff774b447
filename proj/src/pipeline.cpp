#include "pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "analysis.hpp"
#include "ascii_grid.hpp"
#include "error.hpp"
#include "forest.hpp"
#include "layers.hpp"
#include "log.hpp"
#include "metrics.hpp"
#include "polygons.hpp"
#include "rng.hpp"
#include "sampling.hpp"
#include "synth.hpp"

namespace habitat {

namespace fs = std::filesystem;
using nlohmann::json;

Stage stage_from_name(std::string_view name) {
    if (name == "synth") return Stage::synth;
    if (name == "sample") return Stage::sample;
    if (name == "train") return Stage::train;
    if (name == "tune") return Stage::tune;
    if (name == "evaluate") return Stage::evaluate;
    if (name == "importance") return Stage::importance;
    if (name == "predict") return Stage::predict;
    if (name == "analyze") return Stage::analyze;
    throw InvalidArgument("unknown stage '" + std::string(name) + "'");
}

std::string_view stage_name(Stage stage) {
    switch (stage) {
        case Stage::synth: return "synth";
        case Stage::sample: return "sample";
        case Stage::train: return "train";
        case Stage::tune: return "tune";
        case Stage::evaluate: return "evaluate";
        case Stage::importance: return "importance";
        case Stage::predict: return "predict";
        case Stage::analyze: return "analyze";
    }
    return "?";
}

namespace {

// Fixed salts deriving each stage's seed stream from the master seed.
constexpr std::uint64_t kSaltPresence = 0x100000;  // + record index
constexpr std::uint64_t kSaltAbsenceCells = 2;
constexpr std::uint64_t kSaltAbsenceMonths = 3;
constexpr std::uint64_t kSaltSplit = 4;
constexpr std::uint64_t kSaltTrain = 5;
constexpr std::uint64_t kSaltTune = 6;
constexpr std::uint64_t kSaltImportance = 7;

struct StagePaths {
    fs::path dataset_dir, model_dir, metrics_dir, maps_dir, analysis_dir;
    fs::path full, train, test;
    fs::path forest, importance, tune_results, best_params;
    fs::path metrics_json, metrics_text, roc;
    fs::path maps_index;
    fs::path series, change;

    explicit StagePaths(const fs::path& out) {
        dataset_dir = out / "dataset";
        model_dir = out / "model";
        metrics_dir = out / "metrics";
        maps_dir = out / "maps";
        analysis_dir = out / "analysis";
        full = dataset_dir / "full.tsv";
        train = dataset_dir / "train.tsv";
        test = dataset_dir / "test.tsv";
        forest = model_dir / "forest.json";
        importance = model_dir / "importance.tsv";
        tune_results = model_dir / "tune_results.tsv";
        best_params = model_dir / "best_params.json";
        metrics_json = metrics_dir / "metrics.json";
        metrics_text = metrics_dir / "metrics.tsv";
        roc = metrics_dir / "roc.tsv";
        maps_index = maps_dir / "maps.json";
        series = analysis_dir / "series.tsv";
        change = analysis_dir / "change.tsv";
    }
};

void require_exists(const fs::path& path, const char* what) {
    if (path.empty())
        throw InvalidArgument(std::string("config does not name a ") + what + " path");
    if (!fs::exists(path))
        throw IoError(std::string(what) + " not found: " + path.string() +
                      " (run the producing stage first)");
}

void write_stage_manifest(const fs::path& out_dir, Stage stage, const json& body) {
    json doc = body;
    doc["stage"] = std::string(stage_name(stage));
    write_text_file(out_dir / (std::string(stage_name(stage)) + "_manifest.json"),
                    doc.dump(2) + "\n");
}

struct Settings {
    int threads = 1;
    double threshold = 0.5;
    std::uint64_t seed = 0;
    char delimiter = '\t';
    int drop_k = 0;
};

Settings effective_settings(const RunConfig& config, const RunOverrides& overrides) {
    Settings s;
    s.threads = std::max(1, overrides.threads.value_or(1));
    s.threshold = overrides.threshold.value_or(config.threshold);
    if (!(s.threshold > 0.0 && s.threshold < 1.0))
        throw InvalidArgument("threshold must lie in (0, 1)");
    s.seed = overrides.seed.value_or(config.master_seed);
    s.delimiter = overrides.delimiter.value_or(config.delimiter);
    s.drop_k = overrides.drop_k.value_or(0);
    return s;
}

GridSpec require_grid(const RunConfig& config) {
    if (!config.grid)
        throw InvalidArgument("config requires a grid section (the analysis lattice)");
    return *config.grid;
}

LabeledDataset read_dataset_file(const fs::path& path, char delimiter) {
    try {
        return parse_dataset(read_text_file(path), delimiter);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

RandomForest read_forest_file(const fs::path& path) {
    try {
        return parse_forest(read_text_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void cmd_sample(const RunConfig& config, const Settings& settings, const StagePaths& paths) {
    require_exists(config.paths.occurrences, "occurrences");
    require_exists(config.paths.layer_manifest, "layer_manifest");
    require_exists(config.paths.range_map, "range_map");
    const GridSpec grid = require_grid(config);

    OccurrenceParseStats occ_stats;
    const auto records = parse_occurrences(read_text_file(config.paths.occurrences),
                                           settings.delimiter, &occ_stats);
    log_info("sample: " + std::to_string(records.size()) + " occurrence records (" +
             std::to_string(occ_stats.skipped_bad_coordinates + occ_stats.skipped_out_of_range) +
             " rows skipped)");

    const StackStore stacks = StackStore::load(config.paths.layer_manifest, grid,
                                               config.sampling.use_climatology_fallback);
    PolygonSet range = parse_polygons(read_text_file(config.paths.range_map));
    range.role = PolygonRole::range_map;

    // Presence points: each record plus k jittered pseudo-presences.
    std::vector<ExtractPoint> presence_points;
    std::size_t defaulted_uncertainty = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (!rec.uncertainty_m) ++defaulted_uncertainty;
        ExtractPoint point;
        point.location = LonLat{rec.longitude, rec.latitude};
        point.label = 1;
        point.provenance = Provenance::presence;
        point.year = rec.year;
        point.month = rec.month;
        presence_points.push_back(point);
        const auto jittered =
            pseudo_presence(rec, config.sampling.k_pseudo_presence,
                            derive_seed(settings.seed, kSaltPresence + i),
                            config.sampling.default_uncertainty_m);
        for (const auto& loc : jittered) {
            ExtractPoint pseudo = point;
            pseudo.location = loc;
            pseudo.provenance = Provenance::pseudo_presence;
            presence_points.push_back(pseudo);
        }
    }

    const MissingStackPolicy policy = config.sampling.skip_unmatched_months
                                          ? MissingStackPolicy::skip
                                          : MissingStackPolicy::error;
    ExtractStats presence_stats;
    LabeledDataset presence = extract_features(presence_points, stacks, &presence_stats, policy);
    if (presence.size() == 0) throw Error("no presence sample survived feature extraction");

    // Pseudo-absences: outside the range map, on cells valid in every stack,
    // balanced with the presence count unless configured otherwise.
    const int n_absence = config.sampling.n_pseudo_absence > 0
                              ? config.sampling.n_pseudo_absence
                              : static_cast<int>(presence.size());
    const Grid valid_mask = stacks.valid_intersection();
    const auto absence_locations =
        pseudo_absence(range, grid, valid_mask, n_absence, config.sampling.buffer_m,
                       derive_seed(settings.seed, kSaltAbsenceCells));
    const auto periods = stacks.keys();
    Rng month_rng(derive_seed(settings.seed, kSaltAbsenceMonths));
    std::vector<ExtractPoint> absence_points;
    absence_points.reserve(absence_locations.size());
    for (const auto& loc : absence_locations) {
        const auto& period = periods[month_rng.next_below(periods.size())];
        ExtractPoint point;
        point.location = loc;
        point.label = 0;
        point.provenance = Provenance::pseudo_absence;
        point.year = period.first;
        point.month = period.second;
        absence_points.push_back(point);
    }
    ExtractStats absence_stats;
    LabeledDataset absence = extract_features(absence_points, stacks, &absence_stats, policy);

    LabeledDataset full = presence;
    for (auto& s : absence.samples) full.samples.push_back(std::move(s));

    const auto [train, test] = split_70_30(full, derive_seed(settings.seed, kSaltSplit));

    fs::create_directories(paths.dataset_dir);
    write_text_file(paths.full, write_dataset(full, settings.delimiter));
    write_text_file(paths.train, write_dataset(train, settings.delimiter));
    write_text_file(paths.test, write_dataset(test, settings.delimiter));

    write_stage_manifest(
        config.paths.output_dir, Stage::sample,
        json{{"inputs",
              {{"occurrences", config.paths.occurrences.string()},
               {"layer_manifest", config.paths.layer_manifest.string()},
               {"range_map", config.paths.range_map.string()}}},
             {"outputs",
              {{"full", paths.full.string()},
               {"train", paths.train.string()},
               {"test", paths.test.string()}}},
             {"params",
              {{"k_pseudo_presence", config.sampling.k_pseudo_presence},
               {"default_uncertainty_m", config.sampling.default_uncertainty_m},
               {"n_pseudo_absence", n_absence},
               {"buffer_m", config.sampling.buffer_m},
               {"seed", settings.seed}}},
             {"counts",
              {{"occurrence_rows", occ_stats.rows_total},
               {"occurrence_skipped_bad_coordinates", occ_stats.skipped_bad_coordinates},
               {"occurrence_skipped_out_of_range", occ_stats.skipped_out_of_range},
               {"occurrence_dateless", occ_stats.dateless},
               {"occurrence_missing_uncertainty", occ_stats.missing_uncertainty},
               {"uncertainty_defaulted", defaulted_uncertainty},
               {"presence_points", presence_points.size()},
               {"presence_samples", presence.size()},
               {"presence_dropped_nodata", presence_stats.dropped_nodata},
               {"presence_dropped_no_date", presence_stats.dropped_no_date},
               {"presence_dropped_missing_stack", presence_stats.dropped_missing_stack},
               {"absence_samples", absence.size()},
               {"absence_dropped_nodata", absence_stats.dropped_nodata},
               {"train_samples", train.size()},
               {"test_samples", test.size()}}}});
}

std::vector<std::pair<std::string, double>> read_importance_table(const fs::path& path,
                                                                  char delimiter) {
    const std::string text = read_text_file(path);
    std::vector<std::pair<std::string, double>> rows;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line_no == 1) continue;  // header
        const auto first = line.find(delimiter);
        if (first == std::string::npos)
            throw ParseError(path.string() + ": malformed importance row", line_no, 1);
        const auto second = line.find(delimiter, first + 1);
        const std::string name = line.substr(0, first);
        const std::string value =
            second == std::string::npos ? line.substr(first + 1)
                                        : line.substr(first + 1, second - first - 1);
        try {
            rows.emplace_back(name, std::stod(value));
        } catch (const std::exception&) {
            throw ParseError(path.string() + ": invalid importance value '" + value + "'",
                             line_no, 1);
        }
    }
    return rows;
}

void cmd_train(const RunConfig& config, const Settings& settings, const StagePaths& paths) {
    require_exists(paths.train, "training dataset");
    LabeledDataset train = read_dataset_file(paths.train, settings.delimiter);

    std::vector<std::string> dropped;
    if (settings.drop_k > 0) {
        require_exists(paths.importance, "importance table (needed for --drop-k)");
        const auto table = read_importance_table(paths.importance, settings.delimiter);
        std::vector<double> importance(train.n_features(), 0.0);
        std::set<std::string> seen;
        for (const auto& [name, value] : table) {
            for (std::size_t j = 0; j < train.feature_names.size(); ++j)
                if (train.feature_names[j] == name) {
                    importance[j] = value;
                    seen.insert(name);
                }
        }
        if (seen.size() != train.n_features())
            throw InvalidArgument("importance table does not cover every training feature");
        const auto before = train.feature_names;
        train = drop_least_important(train, importance, settings.drop_k);
        for (const auto& name : before)
            if (std::find(train.feature_names.begin(), train.feature_names.end(), name) ==
                train.feature_names.end())
                dropped.push_back(name);
        log_info("train: dropped " + std::to_string(dropped.size()) + " feature(s)");
    }

    const auto forest = fit_forest(train, config.forest, derive_seed(settings.seed, kSaltTrain),
                                   settings.threads);
    const auto oob = oob_score(forest, train);

    fs::create_directories(paths.model_dir);
    write_text_file(paths.forest, serialize_forest(forest));

    write_stage_manifest(
        config.paths.output_dir, Stage::train,
        json{{"inputs", {{"train", paths.train.string()}}},
             {"outputs", {{"forest", paths.forest.string()}}},
             {"params",
              {{"n_estimators", config.forest.n_estimators},
               {"max_features", config.forest.max_features},
               {"max_depth", config.forest.max_depth},
               {"min_samples_split", config.forest.min_samples_split},
               {"min_samples_leaf", config.forest.min_samples_leaf},
               {"drop_k", settings.drop_k},
               {"dropped_features", dropped},
               {"seed", settings.seed}}},
             {"counts",
              {{"train_samples", train.size()},
               {"features", train.n_features()},
               {"oob_score", oob.score},
               {"oob_evaluated", oob.evaluated},
               {"oob_uncovered", oob.uncovered}}}});
}

void cmd_tune(const RunConfig& config, const Settings& settings, const StagePaths& paths) {
    require_exists(paths.train, "training dataset");
    const LabeledDataset train = read_dataset_file(paths.train, settings.delimiter);
    const auto result =
        grid_search(train, config.tune.n_estimators, config.tune.max_features,
                    config.tune.max_depth, config.tune.folds,
                    derive_seed(settings.seed, kSaltTune), settings.threads);

    const char d = settings.delimiter;
    std::string table;
    table += std::string("n_estimators") + d + "max_features" + d + "max_depth" + d + "mean_f1" +
             d + "undefined_folds";
    for (int f = 0; f < config.tune.folds; ++f) table += d + ("fold" + std::to_string(f) + "_f1");
    table += '\n';
    for (const auto& row : result.table) {
        table += std::to_string(row.params.n_estimators);
        table += d;
        table += std::to_string(row.params.max_features);
        table += d;
        table += std::to_string(row.params.max_depth);
        table += d;
        table += format_double(row.mean_f1);
        table += d;
        table += std::to_string(row.undefined_folds);
        for (const auto& score : row.fold_f1) {
            table += d;
            table += format_double(score);
        }
        table += '\n';
    }
    fs::create_directories(paths.model_dir);
    write_text_file(paths.tune_results, table);
    const json best{{"n_estimators", result.best.n_estimators},
                    {"max_features", result.best.max_features},
                    {"max_depth", result.best.max_depth},
                    {"min_samples_split", result.best.min_samples_split},
                    {"min_samples_leaf", result.best.min_samples_leaf}};
    write_text_file(paths.best_params, best.dump(2) + "\n");

    write_stage_manifest(config.paths.output_dir, Stage::tune,
                         json{{"inputs", {{"train", paths.train.string()}}},
                              {"outputs",
                               {{"tune_results", paths.tune_results.string()},
                                {"best_params", paths.best_params.string()}}},
                              {"params", {{"folds", config.tune.folds}, {"seed", settings.seed}}},
                              {"counts", {{"combinations", result.table.size()}}},
                              {"best", best}});
}

void cmd_evaluate(const RunConfig& config, const Settings& settings, const StagePaths& paths) {
    require_exists(paths.forest, "forest file");
    require_exists(paths.test, "test dataset");
    const RandomForest forest = read_forest_file(paths.forest);
    const LabeledDataset test_full = read_dataset_file(paths.test, settings.delimiter);
    const LabeledDataset test = test_full.select_features(forest.feature_names);

    std::vector<int> labels, preds;
    std::vector<double> scores;
    for (const auto& s : test.samples) {
        labels.push_back(s.label);
        scores.push_back(forest.predict_proba(s.features));
        preds.push_back(scores.back() >= settings.threshold ? 1 : 0);
    }
    const auto cm = confusion(labels, preds);
    const auto prf = precision_recall_f1(cm);
    const auto curve = roc_curve(labels, scores);
    const double auc_value = auc(curve);

    fs::create_directories(paths.metrics_dir);
    write_text_file(paths.metrics_json, metrics_report_json(cm, prf, auc_value));
    write_text_file(paths.metrics_text,
                    metrics_report_text(cm, prf, auc_value, settings.delimiter));
    const char d = settings.delimiter;
    std::string roc_text = std::string("threshold") + d + "fpr" + d + "tpr\n";
    for (const auto& point : curve.points) {
        roc_text += format_double(point.threshold);
        roc_text += d;
        roc_text += format_double(point.fpr);
        roc_text += d;
        roc_text += format_double(point.tpr);
        roc_text += '\n';
    }
    write_text_file(paths.roc, roc_text);

    write_stage_manifest(
        config.paths.output_dir, Stage::evaluate,
        json{{"inputs", {{"forest", paths.forest.string()}, {"test", paths.test.string()}}},
             {"outputs",
              {{"metrics_json", paths.metrics_json.string()},
               {"metrics_text", paths.metrics_text.string()},
               {"roc", paths.roc.string()}}},
             {"params", {{"threshold", settings.threshold}}},
             {"counts", {{"test_samples", test.size()}}}});
}

void cmd_importance(const RunConfig& config, const Settings& settings, const StagePaths& paths) {
    require_exists(paths.forest, "forest file");
    require_exists(paths.test, "test dataset");
    const RandomForest forest = read_forest_file(paths.forest);
    const LabeledDataset test =
        read_dataset_file(paths.test, settings.delimiter).select_features(forest.feature_names);

    const auto mdi = importance_mdi(forest);
    constexpr int kRepeats = 10;
    const auto permutation = importance_permutation(forest, test, kRepeats,
                                                    derive_seed(settings.seed, kSaltImportance));

    const char d = settings.delimiter;
    std::string table = std::string("feature") + d + "mdi" + d + "permutation\n";
    for (std::size_t j = 0; j < forest.feature_names.size(); ++j) {
        table += forest.feature_names[j];
        table += d;
        table += format_double(mdi[j]);
        table += d;
        table += format_double(permutation[j]);
        table += '\n';
    }
    fs::create_directories(paths.model_dir);
    write_text_file(paths.importance, table);

    write_stage_manifest(
        config.paths.output_dir, Stage::importance,
        json{{"inputs", {{"forest", paths.forest.string()}, {"test", paths.test.string()}}},
             {"outputs", {{"importance", paths.importance.string()}}},
             {"params", {{"permutation_repeats", kRepeats}, {"seed", settings.seed}}},
             {"counts", {{"features", forest.feature_names.size()}}}});
}

std::string map_file_tag(int year, int month) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d_%02d", year, month);
    return buf;
}

void cmd_predict(const RunConfig& config, const Settings& settings, const StagePaths& paths) {
    require_exists(paths.forest, "forest file");
    require_exists(config.paths.layer_manifest, "layer_manifest");
    const GridSpec grid = require_grid(config);
    const RandomForest forest = read_forest_file(paths.forest);
    const StackStore stacks = StackStore::load(config.paths.layer_manifest, grid);

    fs::create_directories(paths.maps_dir);
    json index = json::array();
    for (const auto& [year, month] : stacks.keys()) {
        const FeatureStack* stack = stacks.find(year, month);
        const FeatureStack selected = stack->select(forest.feature_names);
        const HabitatMap map = predict_map(forest, selected, settings.threshold,
                                           settings.threads);
        const std::string tag = map_file_tag(year, month);
        const fs::path prob_path = paths.maps_dir / ("prob_" + tag + ".asc");
        const fs::path bin_path = paths.maps_dir / ("bin_" + tag + ".asc");
        write_ascii_grid_file(map.probability, prob_path);
        write_ascii_grid_file(map.binary, bin_path);
        write_text_file(paths.maps_dir / ("prob_" + tag + ".ppm"),
                        render_map_image(map, RenderMode::probability));
        write_text_file(paths.maps_dir / ("bin_" + tag + ".ppm"),
                        render_map_image(map, RenderMode::binary));
        index.push_back({{"year", year},
                         {"month", month},
                         {"probability", ("prob_" + tag + ".asc")},
                         {"binary", ("bin_" + tag + ".asc")}});
        log_info("predict: wrote maps for " + tag);
    }
    write_text_file(paths.maps_index, json{{"maps", index}}.dump(2) + "\n");

    write_stage_manifest(
        config.paths.output_dir, Stage::predict,
        json{{"inputs",
              {{"forest", paths.forest.string()},
               {"layer_manifest", config.paths.layer_manifest.string()}}},
             {"outputs", {{"maps_index", paths.maps_index.string()}}},
             {"params", {{"threshold", settings.threshold}}},
             {"counts", {{"maps", index.size()}}}});
}

void cmd_analyze(const RunConfig& config, const Settings& settings, const StagePaths& paths) {
    require_exists(paths.maps_index, "maps index (run predict first)");
    require_exists(config.paths.zones, "zones");

    json index;
    try {
        index = json::parse(read_text_file(paths.maps_index));
    } catch (const json::parse_error& e) {
        throw ParseError(paths.maps_index.string() + ": " + e.what());
    }
    if (!index.is_object() || !index.contains("maps") || !index["maps"].is_array() ||
        index["maps"].empty())
        throw ParseError(paths.maps_index.string() + ": no maps listed");

    std::vector<HabitatMap> maps;
    for (const auto& entry : index["maps"]) {
        const int year = entry.at("year").get<int>();
        const int month = entry.at("month").get<int>();
        const Grid prob =
            read_ascii_grid(paths.maps_dir / entry.at("probability").get<std::string>());
        maps.push_back(threshold_map(prob, year, month, settings.threshold));
    }

    PolygonSet zones = parse_polygons(read_text_file(config.paths.zones));
    zones.role = PolygonRole::zone;

    const HabitatSeries series = monthly_series(maps, zones);
    fs::create_directories(paths.analysis_dir);
    write_text_file(paths.series, write_series(series, settings.delimiter));

    int baseline = config.analysis.baseline_year.value_or(series.entries.front().year);
    const auto total_change = percent_change(series, baseline, std::nullopt);
    std::vector<std::vector<std::pair<int, double>>> zone_changes;
    for (std::size_t z = 0; z < series.zone_names.size(); ++z) {
        // A zone with no suitable baseline area cannot have a change series;
        // surface that as absent values rather than failing the whole stage.
        try {
            zone_changes.push_back(percent_change(series, baseline, z));
        } catch (const InvalidArgument&) {
            zone_changes.push_back({});
        }
    }

    const char d = settings.delimiter;
    std::string change_text = std::string("year") + d + "total_pct";
    for (const auto& zone : series.zone_names) change_text += d + (zone + "_pct");
    change_text += '\n';
    for (std::size_t i = 0; i < total_change.size(); ++i) {
        change_text += std::to_string(total_change[i].first);
        change_text += d;
        change_text += format_double(total_change[i].second);
        for (const auto& zc : zone_changes) {
            change_text += d;
            change_text += i < zc.size() ? format_double(zc[i].second) : std::string("undefined");
        }
        change_text += '\n';
    }
    write_text_file(paths.change, change_text);

    write_stage_manifest(
        config.paths.output_dir, Stage::analyze,
        json{{"inputs",
              {{"maps_index", paths.maps_index.string()}, {"zones", config.paths.zones.string()}}},
             {"outputs", {{"series", paths.series.string()}, {"change", paths.change.string()}}},
             {"params", {{"threshold", settings.threshold}, {"baseline_year", baseline}}},
             {"counts", {{"maps", maps.size()}, {"zones", series.zone_names.size()}}}});
}

}  // namespace

void run_stage(const RunConfig& config, Stage stage, const RunOverrides& overrides) {
    const Settings settings = effective_settings(config, overrides);
    if (config.paths.output_dir.empty())
        throw InvalidArgument("config requires paths.output_dir");
    fs::create_directories(config.paths.output_dir);
    const StagePaths paths(config.paths.output_dir);

    switch (stage) {
        case Stage::synth: {
            RunConfig effective = config;
            effective.master_seed = settings.seed;
            const auto stats = generate_fixtures(effective);
            write_stage_manifest(
                config.paths.output_dir, Stage::synth,
                json{{"outputs",
                      {{"occurrences", config.paths.occurrences.string()},
                       {"layer_manifest", config.paths.layer_manifest.string()},
                       {"range_map", config.paths.range_map.string()},
                       {"zones", config.paths.zones.string()}}},
                     {"params", {{"seed", settings.seed}}},
                     {"counts",
                      {{"rasters", stats.rasters_written},
                       {"occurrences", stats.occurrences_written},
                       {"truth_grids", stats.truth_grids_written}}}});
            break;
        }
        case Stage::sample: cmd_sample(config, settings, paths); break;
        case Stage::train: cmd_train(config, settings, paths); break;
        case Stage::tune: cmd_tune(config, settings, paths); break;
        case Stage::evaluate: cmd_evaluate(config, settings, paths); break;
        case Stage::importance: cmd_importance(config, settings, paths); break;
        case Stage::predict: cmd_predict(config, settings, paths); break;
        case Stage::analyze: cmd_analyze(config, settings, paths); break;
    }
}

}  // namespace habitat
