/*
 * habitat - species distribution modeling toolkit.
 *
 * C API of the shared library. All functions return a hab_status; on
 * failure, hab_last_error() holds a human-readable message for the calling
 * thread. Objects returned through out-parameters are owned by the caller
 * and released with the matching *_free function. Handles are immutable
 * after creation and may be shared across threads.
 */
#ifndef HABITAT_H
#define HABITAT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define HAB_API_VERSION 1u

typedef enum hab_status {
    HAB_OK = 0,
    HAB_ERR_INVALID = 1,  /* invalid argument or precondition violation */
    HAB_ERR_PARSE = 2,    /* malformed input document */
    HAB_ERR_IO = 3,       /* filesystem failure */
    HAB_ERR_STATE = 4,    /* missing artifact or inapplicable operation */
    HAB_ERR_VERSION = 5,  /* unsupported file format version */
    HAB_ERR_INTERNAL = 6
} hab_status;

/* Compile-time HAB_API_VERSION of the linked library. */
unsigned int hab_api_version(void);

/* Stable name of a status code, e.g. "HAB_ERR_PARSE". */
const char *hab_status_name(hab_status status);

/* Message of the calling thread's most recent failure; empty if none. The
 * pointer stays valid until the thread's next failing call. */
const char *hab_last_error(void);

typedef struct hab_grid hab_grid;
typedef struct hab_polygons hab_polygons;
typedef struct hab_dataset hab_dataset;
typedef struct hab_forest hab_forest;

/* --- rasters (ASCII grid files) ------------------------------------- */

hab_status hab_grid_read(const char *path, hab_grid **out);
hab_status hab_grid_write(const hab_grid *grid, const char *path);
hab_status hab_grid_shape(const hab_grid *grid, int *nrows, int *ncols);
/* Cell value by row/col; *is_nodata is 1 and *value undefined on nodata. */
hab_status hab_grid_cell(const hab_grid *grid, int row, int col, double *value, int *is_nodata);
/* Value of the cell containing (lon, lat); nodata when outside the extent. */
hab_status hab_grid_sample(const hab_grid *grid, double lon, double lat, double *value,
                           int *is_nodata);
void hab_grid_free(hab_grid *grid);

/* --- polygon sets (GeoJSON FeatureCollection subset) ------------------ */

hab_status hab_polygons_read(const char *path, hab_polygons **out);
hab_status hab_polygons_count(const hab_polygons *polygons, size_t *count);
/* Even-odd membership over every feature; edge points count as inside. */
hab_status hab_polygons_contains(const hab_polygons *polygons, double lon, double lat,
                                 int *inside);
void hab_polygons_free(hab_polygons *polygons);

/* --- labeled datasets (delimited text) -------------------------------- */

hab_status hab_dataset_read(const char *path, char delimiter, hab_dataset **out);
hab_status hab_dataset_shape(const hab_dataset *dataset, size_t *n_samples, size_t *n_features);
void hab_dataset_free(hab_dataset *dataset);

/* --- random forests ---------------------------------------------------- */

typedef struct hab_forest_params {
    int n_estimators;
    int max_features;
    int max_depth;
    int min_samples_split;
    int min_samples_leaf;
} hab_forest_params;

/* Fills the default configuration (500 trees, 2 features per split,
 * depth 22, min split 2, min leaf 1). */
void hab_forest_params_init(hab_forest_params *params);

hab_status hab_forest_train(const hab_dataset *train, const hab_forest_params *params,
                            uint64_t seed, int n_threads, hab_forest **out);
hab_status hab_forest_read(const char *path, hab_forest **out);
hab_status hab_forest_write(const hab_forest *forest, const char *path);
hab_status hab_forest_n_features(const hab_forest *forest, size_t *count);
/* Borrowed pointer, valid for the lifetime of the forest handle. */
hab_status hab_forest_feature_name(const hab_forest *forest, size_t index, const char **name);
/* Soft-vote presence probability in [0, 1] for one feature vector. */
hab_status hab_forest_predict(const hab_forest *forest, const double *features,
                              size_t n_features, double *probability);
void hab_forest_free(hab_forest *forest);

/* --- pipeline ----------------------------------------------------------- */

typedef struct hab_run_options {
    int threads;       /* <= 0: single-threaded */
    double threshold;  /* NaN: use the config value */
    int has_seed;      /* 0: use the config master seed */
    uint64_t seed;
    int drop_k;        /* <= 0: keep every feature (train stage only) */
    char delimiter;    /* '\0': use the config delimiter */
} hab_run_options;

void hab_run_options_init(hab_run_options *options);

/* Runs one stage ("synth", "sample", "train", "tune", "evaluate",
 * "importance", "predict" or "analyze") of the pipeline described by the
 * JSON run configuration at config_path. options may be NULL. */
hab_status hab_pipeline_run(const char *config_path, const char *stage,
                            const hab_run_options *options);

#ifdef __cplusplus
}
#endif

#endif /* HABITAT_H */
