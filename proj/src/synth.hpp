#pragma once

#include <cstddef>

#include "config.hpp"

namespace habitat {

struct SynthStats {
    std::size_t rasters_written = 0;
    std::size_t occurrences_written = 0;
    std::size_t truth_grids_written = 0;
};

/// Writes a fully seeded synthetic fixture set to the paths named in the
/// config: monthly predictor rasters plus a static elevation layer and a
/// pure-noise layer, a layer manifest, occurrence records sampled from a
/// known logistic suitability surface, a range polygon enclosing the
/// suitable core, four illustrative zone rectangles, and the ground-truth
/// suitability rasters (under truth/, not listed in the manifest). The same
/// seed reproduces every file byte for byte.
SynthStats generate_fixtures(const RunConfig& config);

}  // namespace habitat
