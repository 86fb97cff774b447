// Command-line front end for the habitat pipeline. Deliberately thin: every
// subcommand maps onto hab_pipeline_run from the shared library's C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "habitat.h"

namespace {

struct CliOptions {
    std::string config;
    int threads = 0;
    double threshold = std::nan("");
    bool has_seed = false;
    std::uint64_t seed = 0;
    int drop_k = 0;
    std::string delimiter;
};

char parse_delimiter_flag(const std::string& s) {
    if (s == "tab" || s == "\\t") return '\t';
    if (s.size() == 1) return s[0];
    throw CLI::ValidationError("--delimiter", "must be a single character or 'tab'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"habitat - species distribution modeling pipeline"};
    app.require_subcommand(1);

    CliOptions opts;
    const struct {
        const char* name;
        const char* description;
    } stages[] = {
        {"synth", "Generate a seeded synthetic fixture set (rasters, occurrences, polygons)"},
        {"sample", "Build the labeled dataset: pseudo-presences, pseudo-absences, 70/30 split"},
        {"train", "Train the random forest on the training split"},
        {"tune", "Cross-validated hyper-parameter grid search"},
        {"evaluate", "Score the forest on the test split (precision/recall/F1/AUC)"},
        {"importance", "Feature importance table (impurity and permutation)"},
        {"predict", "Monthly habitat suitability maps for every stack in the manifest"},
        {"analyze", "Suitable-area series, zonal aggregates and change vs the baseline year"},
    };
    for (const auto& stage : stages) {
        auto* cmd = app.add_subcommand(stage.name, stage.description);
        cmd->add_option("--config", opts.config, "Run configuration (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--threads", opts.threads, "Worker threads (default 1)");
        cmd->add_option("--threshold", opts.threshold,
                        "Suitability threshold override, in (0, 1)");
        cmd->add_option("--seed", opts.seed, "Master seed override")
            ->each([&](const std::string&) { opts.has_seed = true; });
        if (std::string(stage.name) == "train")
            cmd->add_option("--drop-k", opts.drop_k,
                            "Drop the k least important features (needs importance table)");
        cmd->add_option("--delimiter", opts.delimiter,
                        "Field delimiter for text artifacts ('tab' or a single character)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string stage = app.get_subcommands().front()->get_name();

    hab_run_options run;
    hab_run_options_init(&run);
    run.threads = opts.threads;
    run.threshold = opts.threshold;
    run.has_seed = opts.has_seed ? 1 : 0;
    run.seed = opts.seed;
    run.drop_k = opts.drop_k;
    if (!opts.delimiter.empty()) {
        try {
            run.delimiter = parse_delimiter_flag(opts.delimiter);
        } catch (const CLI::ValidationError& e) {
            std::fprintf(stderr, "habitat: %s\n", e.what());
            return 2;
        }
    }

    const hab_status status = hab_pipeline_run(opts.config.c_str(), stage.c_str(), &run);
    if (status != HAB_OK) {
        std::fprintf(stderr, "habitat %s: %s: %s\n", stage.c_str(), hab_status_name(status),
                     hab_last_error());
        return static_cast<int>(status);
    }
    return 0;
}
