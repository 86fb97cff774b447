#include "habitat.h"

#include <cmath>
#include <cstring>
#include <string>

#include "ascii_grid.hpp"
#include "config.hpp"
#include "dataset.hpp"
#include "error.hpp"
#include "forest.hpp"
#include "grid.hpp"
#include "pipeline.hpp"
#include "polygons.hpp"

using namespace habitat;

struct hab_grid {
    Grid grid;
};
struct hab_polygons {
    PolygonSet set;
};
struct hab_dataset {
    LabeledDataset dataset;
};
struct hab_forest {
    RandomForest forest;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

/// Runs fn, translating exceptions into status codes + the thread-local
/// error message.
template <typename Fn>
hab_status guard(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return HAB_OK;
    } catch (const ParseError& e) {
        set_error(e.what());
        return HAB_ERR_PARSE;
    } catch (const IoError& e) {
        set_error(e.what());
        return HAB_ERR_IO;
    } catch (const VersionError& e) {
        set_error(e.what());
        return HAB_ERR_VERSION;
    } catch (const InvalidArgument& e) {
        set_error(e.what());
        return HAB_ERR_INVALID;
    } catch (const Error& e) {
        set_error(e.what());
        return HAB_ERR_STATE;
    } catch (const std::exception& e) {
        set_error(e.what());
        return HAB_ERR_INTERNAL;
    }
}

hab_status invalid(const char* msg) {
    set_error(msg);
    return HAB_ERR_INVALID;
}

}  // namespace

extern "C" {

unsigned int hab_api_version(void) { return HAB_API_VERSION; }

const char* hab_status_name(hab_status status) {
    switch (status) {
        case HAB_OK: return "HAB_OK";
        case HAB_ERR_INVALID: return "HAB_ERR_INVALID";
        case HAB_ERR_PARSE: return "HAB_ERR_PARSE";
        case HAB_ERR_IO: return "HAB_ERR_IO";
        case HAB_ERR_STATE: return "HAB_ERR_STATE";
        case HAB_ERR_VERSION: return "HAB_ERR_VERSION";
        case HAB_ERR_INTERNAL: return "HAB_ERR_INTERNAL";
    }
    return "HAB_ERR_INTERNAL";
}

const char* hab_last_error(void) { return g_last_error.c_str(); }

hab_status hab_grid_read(const char* path, hab_grid** out) {
    if (path == nullptr || out == nullptr) return invalid("path and out must be non-null");
    *out = nullptr;
    return guard([&] { *out = new hab_grid{read_ascii_grid(path)}; });
}

hab_status hab_grid_write(const hab_grid* grid, const char* path) {
    if (grid == nullptr || path == nullptr) return invalid("grid and path must be non-null");
    return guard([&] { write_ascii_grid_file(grid->grid, path); });
}

hab_status hab_grid_shape(const hab_grid* grid, int* nrows, int* ncols) {
    if (grid == nullptr || nrows == nullptr || ncols == nullptr)
        return invalid("grid, nrows and ncols must be non-null");
    *nrows = grid->grid.nrows();
    *ncols = grid->grid.ncols();
    g_last_error.clear();
    return HAB_OK;
}

hab_status hab_grid_cell(const hab_grid* grid, int row, int col, double* value, int* is_nodata) {
    if (grid == nullptr || value == nullptr || is_nodata == nullptr)
        return invalid("grid, value and is_nodata must be non-null");
    if (row < 0 || row >= grid->grid.nrows() || col < 0 || col >= grid->grid.ncols())
        return invalid("cell index out of range");
    const auto v = grid->grid.value(row, col);
    *is_nodata = v ? 0 : 1;
    *value = v.value_or(grid->grid.nodata_value());
    g_last_error.clear();
    return HAB_OK;
}

hab_status hab_grid_sample(const hab_grid* grid, double lon, double lat, double* value,
                           int* is_nodata) {
    if (grid == nullptr || value == nullptr || is_nodata == nullptr)
        return invalid("grid, value and is_nodata must be non-null");
    const auto v = sample_at(grid->grid, LonLat{lon, lat});
    *is_nodata = v ? 0 : 1;
    *value = v.value_or(grid->grid.nodata_value());
    g_last_error.clear();
    return HAB_OK;
}

void hab_grid_free(hab_grid* grid) { delete grid; }

hab_status hab_polygons_read(const char* path, hab_polygons** out) {
    if (path == nullptr || out == nullptr) return invalid("path and out must be non-null");
    *out = nullptr;
    return guard([&] { *out = new hab_polygons{parse_polygons(read_text_file(path))}; });
}

hab_status hab_polygons_count(const hab_polygons* polygons, size_t* count) {
    if (polygons == nullptr || count == nullptr)
        return invalid("polygons and count must be non-null");
    *count = polygons->set.polygons.size();
    g_last_error.clear();
    return HAB_OK;
}

hab_status hab_polygons_contains(const hab_polygons* polygons, double lon, double lat,
                                 int* inside) {
    if (polygons == nullptr || inside == nullptr)
        return invalid("polygons and inside must be non-null");
    *inside = point_in_polygonset(LonLat{lon, lat}, polygons->set) ? 1 : 0;
    g_last_error.clear();
    return HAB_OK;
}

void hab_polygons_free(hab_polygons* polygons) { delete polygons; }

hab_status hab_dataset_read(const char* path, char delimiter, hab_dataset** out) {
    if (path == nullptr || out == nullptr) return invalid("path and out must be non-null");
    *out = nullptr;
    return guard([&] {
        *out = new hab_dataset{
            parse_dataset(read_text_file(path), delimiter == '\0' ? '\t' : delimiter)};
    });
}

hab_status hab_dataset_shape(const hab_dataset* dataset, size_t* n_samples, size_t* n_features) {
    if (dataset == nullptr || n_samples == nullptr || n_features == nullptr)
        return invalid("dataset, n_samples and n_features must be non-null");
    *n_samples = dataset->dataset.size();
    *n_features = dataset->dataset.n_features();
    g_last_error.clear();
    return HAB_OK;
}

void hab_dataset_free(hab_dataset* dataset) { delete dataset; }

void hab_forest_params_init(hab_forest_params* params) {
    if (params == nullptr) return;
    const Hyperparams defaults;
    params->n_estimators = defaults.n_estimators;
    params->max_features = defaults.max_features;
    params->max_depth = defaults.max_depth;
    params->min_samples_split = defaults.min_samples_split;
    params->min_samples_leaf = defaults.min_samples_leaf;
}

hab_status hab_forest_train(const hab_dataset* train, const hab_forest_params* params,
                            uint64_t seed, int n_threads, hab_forest** out) {
    if (train == nullptr || params == nullptr || out == nullptr)
        return invalid("train, params and out must be non-null");
    *out = nullptr;
    return guard([&] {
        const Hyperparams hp{params->n_estimators, params->max_features, params->max_depth,
                             params->min_samples_split, params->min_samples_leaf};
        *out = new hab_forest{fit_forest(train->dataset, hp, seed, std::max(1, n_threads))};
    });
}

hab_status hab_forest_read(const char* path, hab_forest** out) {
    if (path == nullptr || out == nullptr) return invalid("path and out must be non-null");
    *out = nullptr;
    return guard([&] { *out = new hab_forest{parse_forest(read_text_file(path))}; });
}

hab_status hab_forest_write(const hab_forest* forest, const char* path) {
    if (forest == nullptr || path == nullptr) return invalid("forest and path must be non-null");
    return guard([&] { write_text_file(path, serialize_forest(forest->forest)); });
}

hab_status hab_forest_n_features(const hab_forest* forest, size_t* count) {
    if (forest == nullptr || count == nullptr) return invalid("forest and count must be non-null");
    *count = forest->forest.n_features();
    g_last_error.clear();
    return HAB_OK;
}

hab_status hab_forest_feature_name(const hab_forest* forest, size_t index, const char** name) {
    if (forest == nullptr || name == nullptr) return invalid("forest and name must be non-null");
    if (index >= forest->forest.n_features()) return invalid("feature index out of range");
    *name = forest->forest.feature_names[index].c_str();
    g_last_error.clear();
    return HAB_OK;
}

hab_status hab_forest_predict(const hab_forest* forest, const double* features, size_t n_features,
                              double* probability) {
    if (forest == nullptr || features == nullptr || probability == nullptr)
        return invalid("forest, features and probability must be non-null");
    return guard([&] {
        *probability = forest->forest.predict_proba(std::span<const double>(features, n_features));
    });
}

void hab_forest_free(hab_forest* forest) { delete forest; }

void hab_run_options_init(hab_run_options* options) {
    if (options == nullptr) return;
    options->threads = 0;
    options->threshold = std::nan("");
    options->has_seed = 0;
    options->seed = 0;
    options->drop_k = 0;
    options->delimiter = '\0';
}

hab_status hab_pipeline_run(const char* config_path, const char* stage,
                            const hab_run_options* options) {
    if (config_path == nullptr || stage == nullptr)
        return invalid("config_path and stage must be non-null");
    return guard([&] {
        const RunConfig config = RunConfig::load(config_path);
        RunOverrides overrides;
        if (options != nullptr) {
            if (options->threads > 0) overrides.threads = options->threads;
            if (!std::isnan(options->threshold)) overrides.threshold = options->threshold;
            if (options->has_seed != 0) overrides.seed = options->seed;
            if (options->drop_k > 0) overrides.drop_k = options->drop_k;
            if (options->delimiter != '\0') overrides.delimiter = options->delimiter;
        }
        run_stage(config, stage_from_name(stage), overrides);
    });
}

}  // extern "C"
