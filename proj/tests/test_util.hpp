#pragma once

#include <unistd.h>

#include <filesystem>
#include <string>

#include "grid.hpp"
#include "rng.hpp"

namespace habitat::test {

/// Random grid with a sprinkling of nodata cells; values have a few decimal
/// digits so text round-trips are representative.
inline Grid random_grid(Rng& rng, int nrows, int ncols, double nodata_fraction = 0.1) {
    GridSpec spec;
    spec.nrows = nrows;
    spec.ncols = ncols;
    spec.xllcorner = -30.0 + 60.0 * rng.next_double();
    spec.yllcorner = -40.0 + 60.0 * rng.next_double();
    spec.cellsize = 0.05 + rng.next_double() * 0.5;
    Grid g(spec, GridKind::continuous, -9999.0);
    for (int r = 0; r < nrows; ++r) {
        for (int c = 0; c < ncols; ++c) {
            if (rng.next_double() < nodata_fraction) continue;
            g.set(r, c, -100.0 + 200.0 * rng.next_double());
        }
    }
    return g;
}

inline bool grids_equal(const Grid& a, const Grid& b) {
    if (!(a.spec() == b.spec())) return false;
    if (a.nodata_value() != b.nodata_value()) return false;
    for (int r = 0; r < a.nrows(); ++r) {
        for (int c = 0; c < a.ncols(); ++c) {
            if (a.is_nodata(r, c) != b.is_nodata(r, c)) return false;
            if (!a.is_nodata(r, c) && a.at(r, c) != b.at(r, c)) return false;
        }
    }
    return true;
}

/// Temporary directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        dir_ = std::filesystem::temp_directory_path() /
               ("habitat_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    const std::filesystem::path& path() const { return dir_; }

private:
    std::filesystem::path dir_;
};

}  // namespace habitat::test
