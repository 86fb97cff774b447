#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "config.hpp"

namespace habitat {

enum class Stage { synth, sample, train, tune, evaluate, importance, predict, analyze };

Stage stage_from_name(std::string_view name);
std::string_view stage_name(Stage stage);

/// CLI flag overrides; unset fields fall back to the config.
struct RunOverrides {
    std::optional<int> threads;
    std::optional<double> threshold;
    std::optional<std::uint64_t> seed;
    std::optional<int> drop_k;   // train only: drop the k least important features
    std::optional<char> delimiter;
};

/// Runs one pipeline stage against the artifacts below the config's
/// output_dir, validating that the stage's inputs exist first. Each stage
/// overwrites its own outputs and writes <stage>_manifest.json describing
/// inputs, outputs, parameters and counts. Errors are thrown; nothing is
/// retried or silently skipped.
void run_stage(const RunConfig& config, Stage stage, const RunOverrides& overrides = {});

}  // namespace habitat
