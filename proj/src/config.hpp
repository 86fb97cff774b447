#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "forest.hpp"
#include "grid.hpp"

namespace habitat {

struct SamplingConfig {
    int k_pseudo_presence = 2;
    double default_uncertainty_m = 1000.0;
    int n_pseudo_absence = 0;  // 0: match the extracted presence count
    double buffer_m = 0.0;
    bool use_climatology_fallback = false;
    bool skip_unmatched_months = false;
};

struct TuneConfig {
    std::vector<int> n_estimators{100, 300, 500};
    std::vector<int> max_features{2, 3};
    std::vector<int> max_depth{8, 22};
    int folds = 5;
};

struct SynthConfig {
    int ncols = 60;
    int nrows = 60;
    double xllcorner = 70.0;
    double yllcorner = 8.0;
    double cellsize = 0.25;
    std::vector<int> years{2001};
    int n_occurrences = 300;
};

struct AnalysisConfig {
    std::optional<int> baseline_year;  // default: earliest year in the series
};

/// Declarative run configuration: one JSON document drives every stage.
/// Relative paths resolve against the config file's directory. The master
/// seed is mandatory; stages never fall back to wall-clock seeding.
struct RunConfig {
    struct Paths {
        std::filesystem::path occurrences;
        std::filesystem::path layer_manifest;
        std::filesystem::path range_map;
        std::filesystem::path zones;
        std::filesystem::path output_dir;
    };

    Paths paths;
    std::optional<GridSpec> grid;  // analysis lattice; required by most stages
    SamplingConfig sampling;
    Hyperparams forest;
    TuneConfig tune;
    AnalysisConfig analysis;
    SynthConfig synth;
    double threshold = 0.5;
    char delimiter = '\t';
    std::uint64_t master_seed = 0;

    static RunConfig load(const std::filesystem::path& path);
    static RunConfig parse(std::string_view text, const std::filesystem::path& base_dir);
};

}  // namespace habitat
