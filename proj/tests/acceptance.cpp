// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. End-to-end criteria drive the installed CLI binary (path
// in $HABITAT_CLI) and fall back to in-process stage execution when unset.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "ascii_grid.hpp"
#include "config.hpp"
#include "dataset.hpp"
#include "forest.hpp"
#include "grid.hpp"
#include "metrics.hpp"
#include "pipeline.hpp"
#include "polygons.hpp"
#include "rng.hpp"
#include "sampling.hpp"

using namespace habitat;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int criterion, bool pass, const std::string& details) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, details.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

// --------------------------------------------------------------------------
// Criterion 1: exhaustive-oracle split equivalence.

LabeledDataset make_dataset(const std::vector<std::vector<double>>& rows,
                            const std::vector<int>& labels) {
    LabeledDataset ds;
    for (std::size_t j = 0; j < rows.front().size(); ++j)
        ds.feature_names.push_back("f" + std::to_string(j));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        LabeledSample s;
        s.features = rows[i];
        s.label = labels[i];
        s.location = {70.0, 10.0};
        s.year = 2001;
        s.month = 1;
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

struct OracleSplit {
    bool valid = false;
    int feature = -1;
    double threshold = 0.0;
};

/// Brute force over every feature and midpoint threshold, recounting the
/// partition per candidate; exact rational ranking with (feature, threshold)
/// tie-breaks.
OracleSplit oracle_split(const LabeledDataset& ds) {
    using u128 = unsigned __int128;
    const std::uint64_t n = ds.size();
    std::uint64_t p0 = 0, p1 = 0;
    for (const auto& s : ds.samples) (s.label == 1 ? p1 : p0)++;
    const std::uint64_t sp = p0 * p0 + p1 * p1;
    OracleSplit best;
    std::uint64_t best_num = 0, best_den = 1;
    for (std::size_t f = 0; f < ds.n_features(); ++f) {
        std::vector<double> values;
        for (const auto& s : ds.samples) values.push_back(s.features[f]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t k = 0; k + 1 < values.size(); ++k) {
            const double threshold = values[k] + (values[k + 1] - values[k]) / 2.0;
            std::uint64_t l0 = 0, l1 = 0;
            for (const auto& s : ds.samples)
                if (s.features[f] <= threshold) (s.label == 1 ? l1 : l0)++;
            const std::uint64_t nl = l0 + l1;
            const std::uint64_t nr = n - nl;
            if (nl == 0 || nr == 0) continue;
            const std::uint64_t sl = l0 * l0 + l1 * l1;
            const std::uint64_t r0 = p0 - l0, r1 = p1 - l1;
            const std::uint64_t sr = r0 * r0 + r1 * r1;
            if (u128(n) * (u128(sl) * nr + u128(sr) * nl) <= u128(sp) * nl * nr) continue;
            const std::uint64_t num = sl * nr + sr * nl;
            const std::uint64_t den = nl * nr;
            if (!best.valid || u128(num) * best_den > u128(best_num) * den) {
                best = {true, static_cast<int>(f), threshold};
                best_num = num;
                best_den = den;
            }
        }
    }
    return best;
}

void criterion_1() {
    Timer timer;
    Rng rng(0xC1);
    int agreed = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + rng.next_below(11);
        const std::size_t nf = 1 + rng.next_below(3);
        std::vector<std::vector<double>> rows;
        std::vector<int> labels;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> row(nf);
            for (auto& v : row) v = static_cast<double>(rng.next_below(6)) / 2.0;
            rows.push_back(std::move(row));
            labels.push_back(static_cast<int>(rng.next_below(2)));
        }
        const auto ds = make_dataset(rows, labels);
        Hyperparams params;
        params.max_features = static_cast<int>(nf);
        params.max_depth = 1;
        std::vector<std::uint32_t> bootstrap(n);
        std::iota(bootstrap.begin(), bootstrap.end(), 0u);
        const Tree tree = fit_tree(ds, bootstrap, params, derive_seed(0xC1, trial));
        const OracleSplit want = oracle_split(ds);
        const bool tree_split = !tree[0].is_leaf();
        bool ok = tree_split == want.valid;
        if (ok && want.valid)
            ok = tree[0].feature == want.feature && tree[0].threshold == want.threshold;
        if (ok) ++agreed;
    }
    const double elapsed = timer.seconds();
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "oracle split equivalence (%d/%d exact, %.2f s, limit 5 s)", agreed, trials,
                  elapsed);
    report(1, agreed == trials && elapsed < 5.0, buf);
}

// --------------------------------------------------------------------------
// Criterion 2: AUC equals Mann-Whitney pair counting.

void criterion_2() {
    Timer timer;
    Rng rng(0xC2);
    int agreed = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + rng.next_below(199);
        std::vector<int> labels(n);
        std::vector<double> scores(n);
        const int distinct = 2 + static_cast<int>(rng.next_below(40));
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = static_cast<int>(rng.next_below(2));
            scores[i] = static_cast<double>(rng.next_below(distinct)) / distinct;
        }
        labels[0] = 0;
        labels[n - 1] = 1;
        const double trapezoid = auc(roc_curve(labels, scores));
        double wins = 0.0;
        std::uint64_t pairs = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i] != 1) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (labels[j] != 0) continue;
                ++pairs;
                if (scores[i] > scores[j]) wins += 1.0;
                else if (scores[i] == scores[j]) wins += 0.5;
            }
        }
        if (std::abs(trapezoid - wins / pairs) <= 1e-12) ++agreed;
    }
    const double elapsed = timer.seconds();
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "AUC vs Mann-Whitney pair counting (%d/%d within 1e-12, %.2f s, limit 10 s)",
                  agreed, trials, elapsed);
    report(2, agreed == trials && elapsed < 10.0, buf);
}

// --------------------------------------------------------------------------
// Criterion 3: thread-count determinism with the default hyper-parameters.

LabeledDataset synthetic_blobs(std::size_t n, std::size_t nf, double gap, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (std::size_t i = 0; i < n; ++i) {
        const int label = static_cast<int>(rng.next_below(2));
        const double center = label == 1 ? 1.0 + gap / 2.0 : -1.0 - gap / 2.0;
        std::vector<double> row(nf);
        for (auto& v : row) v = center + (rng.next_double() * 2.0 - 1.0);
        rows.push_back(std::move(row));
        labels.push_back(label);
    }
    labels[0] = 0;
    labels[1] = 1;
    return make_dataset(rows, labels);
}

void criterion_3() {
    const auto train = synthetic_blobs(600, 7, -0.6, 0xC3);
    const Hyperparams reference{500, 2, 22, 2, 1};
    std::vector<std::string> serialized;
    std::vector<double> times;
    for (const int threads : {1, 4, 8}) {
        Timer timer;
        serialized.push_back(serialize_forest(fit_forest(train, reference, 20010131, threads)));
        times.push_back(timer.seconds());
    }
    const bool identical = serialized[0] == serialized[1] && serialized[0] == serialized[2];
    const bool in_time = *std::max_element(times.begin(), times.end()) < 60.0;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "500-tree determinism across 1/4/8 threads (%s, runs %.1f/%.1f/%.1f s, "
                  "limit 60 s each)",
                  identical ? "byte-identical" : "MISMATCH", times[0], times[1], times[2]);
    report(3, identical && in_time, buf);
}

// --------------------------------------------------------------------------
// Criteria 4 and 7: synthetic end-to-end runs through the CLI.

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        dir_ = fs::temp_directory_path() /
               ("habitat_accept_" + tag + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    const fs::path& path() const { return dir_; }

private:
    fs::path dir_;
};

void write_run_config(const fs::path& dir, std::uint64_t seed) {
    const nlohmann::json doc{
        {"paths",
         {{"occurrences", "fixtures/occurrences.tsv"},
          {"layer_manifest", "fixtures/manifest.json"},
          {"range_map", "fixtures/range_map.geojson"},
          {"zones", "fixtures/zones.geojson"},
          {"output_dir", "."}}},
        {"grid", {{"ncols", 48}, {"nrows", 48}, {"xllcorner", 70.0}, {"yllcorner", 8.0},
                  {"cellsize", 0.25}}},
        {"synth", {{"ncols", 48}, {"nrows", 48}, {"xllcorner", 70.0}, {"yllcorner", 8.0},
                   {"cellsize", 0.25}, {"years", {2001}}, {"n_occurrences", 250}}},
        {"forest", {{"n_estimators", 500}, {"max_features", 2}, {"max_depth", 22}}},
        {"threshold", 0.5},
        {"master_seed", seed}};
    std::ofstream out(dir / "config.json");
    out << doc.dump(2) << "\n";
}

/// Runs one stage via the CLI binary when $HABITAT_CLI is set, otherwise
/// in-process. Returns true on success.
bool run_stage_cli(const fs::path& dir, const std::string& stage) {
    const char* cli = std::getenv("HABITAT_CLI");
    if (cli != nullptr && *cli != '\0') {
        const std::string cmd = std::string(cli) + " " + stage + " --config " +
                                (dir / "config.json").string() + " --threads 2 >> " +
                                (dir / "cli.log").string() + " 2>&1";
        return std::system(cmd.c_str()) == 0;
    }
    try {
        RunOverrides overrides;
        overrides.threads = 2;
        run_stage(RunConfig::load(dir / "config.json"), stage_from_name(stage), overrides);
        return true;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "  stage %s failed: %s\n", stage.c_str(), e.what());
        return false;
    }
}

std::map<std::string, double> read_mdi(const fs::path& importance_path) {
    std::ifstream in(importance_path);
    std::map<std::string, double> mdi;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string feature;
        double mdi_value = 0.0;
        if (row >> feature >> mdi_value) mdi[feature] = mdi_value;
    }
    return mdi;
}

void criterion_4() {
    Timer timer;
    const bool using_cli = std::getenv("HABITAT_CLI") != nullptr;
    double headline_auc = 0.0, headline_f1 = 0.0;
    bool headline_ok = false;
    int ranking_ok = 0;
    const int runs = 20;
    bool stages_ok = true;
    for (int run = 0; run < runs && stages_ok; ++run) {
        TempDir dir("c4_" + std::to_string(run));
        write_run_config(dir.path(), 0xC4000 + run);
        for (const char* stage : {"synth", "sample", "train", "importance"}) {
            if (!run_stage_cli(dir.path(), stage)) {
                stages_ok = false;
                break;
            }
        }
        if (!stages_ok) break;
        if (run == 0) {
            if (!run_stage_cli(dir.path(), "evaluate")) {
                stages_ok = false;
                break;
            }
            const auto metrics =
                nlohmann::json::parse(read_text_file(dir.path() / "metrics/metrics.json"));
            headline_auc = metrics["auc"].get<double>();
            headline_f1 = metrics["f1"].is_null() ? 0.0 : metrics["f1"].get<double>();
            headline_ok = headline_auc >= 0.90 && headline_f1 >= 0.80;
        }
        const auto mdi = read_mdi(dir.path() / "model/importance.tsv");
        const double noise = mdi.at("noise");
        if (mdi.at("npp") > noise && mdi.at("lai") > noise && mdi.at("elevation") > noise)
            ++ranking_ok;
    }
    const double elapsed = timer.seconds();
    const bool ranking_pass = ranking_ok >= 19;  // >= 95% of 20 runs
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "synthetic end-to-end via %s (AUC %.3f >= 0.90, F1 %.3f >= 0.80, informative "
                  "MDI above noise in %d/%d runs, %.0f s, limit 300 s)",
                  using_cli ? "CLI" : "in-process stages", headline_auc, headline_f1, ranking_ok,
                  runs, elapsed);
    report(4, stages_ok && headline_ok && ranking_pass && elapsed < 300.0, buf);
}

void criterion_7() {
    Timer timer;
    bool all_peaks_ok = true;
    std::string peaks;
    const int runs = 3;
    for (int run = 0; run < runs; ++run) {
        TempDir dir("c7_" + std::to_string(run));
        write_run_config(dir.path(), 0xC7000 + run);
        bool ok = true;
        for (const char* stage : {"synth", "sample", "train", "predict", "analyze"})
            if (!run_stage_cli(dir.path(), stage)) {
                ok = false;
                break;
            }
        if (!ok) {
            all_peaks_ok = false;
            break;
        }
        const auto series =
            parse_series(read_text_file(dir.path() / "analysis/series.tsv"), '\t');
        const auto peak = std::max_element(
            series.entries.begin(), series.entries.end(),
            [](const auto& a, const auto& b) { return a.total_km2 < b.total_km2; });
        peaks += (peaks.empty() ? "" : ",") + std::to_string(peak->month);
        if (peak->month < 9 || peak->month > 11) all_peaks_ok = false;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "monsoon fixture: suitable-area peak in Sep-Nov every run (peak months: %s, "
                  "%.0f s)",
                  peaks.c_str(), timer.seconds());
    report(7, all_peaks_ok, buf);
}

// --------------------------------------------------------------------------
// Criterion 5: geometry.

double is_left(LonLat a, LonLat b, LonLat p) {
    return (b.lon - a.lon) * (p.lat - a.lat) - (p.lon - a.lon) * (b.lat - a.lat);
}

bool winding_inside(LonLat p, const Ring& ring) {
    int wn = 0;
    for (std::size_t i = 0; i + 1 < ring.vertices.size(); ++i) {
        const LonLat a = ring.vertices[i];
        const LonLat b = ring.vertices[i + 1];
        if (a.lat <= p.lat) {
            if (b.lat > p.lat && is_left(a, b, p) > 0) ++wn;
        } else {
            if (b.lat <= p.lat && is_left(a, b, p) < 0) --wn;
        }
    }
    return wn != 0;
}

void criterion_5() {
    Timer timer;
    // (a) Global 0.5-degree cell areas sum to the sphere within 0.1%.
    const GridSpec globe{720, 360, -180.0, -90.0, 0.5};
    double total = 0.0;
    for (int r = 0; r < globe.nrows; ++r) total += cell_area_km2(globe, r) * globe.ncols;
    const double sphere = 4.0 * M_PI * geo::kEarthRadiusKm * geo::kEarthRadiusKm;
    const double sphere_err = std::abs(total - sphere) / sphere;
    const bool area_ok = sphere_err < 1e-3;

    // (b) Pseudo-presence jitter never leaves the uncertainty disk.
    Rng rng(0xC5);
    double max_violation = 0.0;
    for (int i = 0; i < 10000; ++i) {
        OccurrenceRecord rec;
        rec.longitude = -180.0 + 360.0 * rng.next_double();
        rec.latitude = -66.0 + 132.0 * rng.next_double();
        rec.year = 2001;
        rec.month = 1;
        rec.uncertainty_m = 10000.0 * rng.next_double();
        const auto points = pseudo_presence(rec, 3, derive_seed(0xC5, i));
        for (const auto& p : points) {
            const double d = geo::haversine_m({rec.longitude, rec.latitude}, p);
            max_violation = std::max(max_violation, d - *rec.uncertainty_m);
        }
    }
    const bool jitter_ok = max_violation <= 0.0;

    // (c) Ray casting agrees with the winding oracle off edges.
    int pip_checked = 0, pip_agreed = 0;
    while (pip_checked < 10000) {
        const double cx = -5.0 + 10.0 * rng.next_double();
        const double cy = -5.0 + 10.0 * rng.next_double();
        const int nv = 5 + static_cast<int>(rng.next_below(12));
        std::vector<double> angles(nv);
        for (auto& a : angles) a = 2.0 * M_PI * rng.next_double();
        std::sort(angles.begin(), angles.end());
        Ring ring;
        for (int i = 0; i < nv; ++i) {
            const double radius = 0.5 + 3.0 * rng.next_double();
            ring.vertices.push_back(
                {cx + radius * std::cos(angles[i]), cy + radius * std::sin(angles[i])});
        }
        ring.vertices.push_back(ring.vertices.front());
        const PolygonSet set{PolygonRole::unspecified, {NamedPolygon{"r", {ring}}}};
        for (int i = 0; i < 50 && pip_checked < 10000; ++i) {
            const LonLat p{-10.0 + 20.0 * rng.next_double(), -10.0 + 20.0 * rng.next_double()};
            double min_edge = 1e300;
            for (std::size_t e = 0; e + 1 < ring.vertices.size(); ++e) {
                const LonLat a = ring.vertices[e];
                const LonLat b = ring.vertices[e + 1];
                const double dx = b.lon - a.lon, dy = b.lat - a.lat;
                const double len2 = dx * dx + dy * dy;
                double t = len2 > 0 ? ((p.lon - a.lon) * dx + (p.lat - a.lat) * dy) / len2 : 0.0;
                t = std::clamp(t, 0.0, 1.0);
                const double ex = a.lon + t * dx - p.lon, ey = a.lat + t * dy - p.lat;
                min_edge = std::min(min_edge, std::sqrt(ex * ex + ey * ey));
            }
            if (min_edge < 1e-9) continue;
            ++pip_checked;
            if (point_in_polygonset(p, set) == winding_inside(p, ring)) ++pip_agreed;
        }
    }
    const bool pip_ok = pip_agreed == pip_checked;

    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "geometry (sphere sum err %.2e < 1e-3, jitter max violation %.3g m, "
                  "point-in-polygon %d/%d, %.1f s)",
                  sphere_err, max_violation, pip_agreed, pip_checked, timer.seconds());
    report(5, area_ok && jitter_ok && pip_ok, buf);
}

// --------------------------------------------------------------------------
// Criterion 6: pipeline formula identities.

void criterion_6() {
    Timer timer;
    Rng rng(0xC6);
    // (a) precision/recall/F1 identities on randomized confusion matrices.
    bool prf_ok = true;
    for (int i = 0; i < 1000; ++i) {
        const ConfusionMatrix cm{static_cast<long>(rng.next_below(200)),
                                 static_cast<long>(rng.next_below(200)),
                                 static_cast<long>(rng.next_below(200)),
                                 static_cast<long>(rng.next_below(200))};
        const auto prf = precision_recall_f1(cm);
        if (cm.tp + cm.fp > 0) {
            if (!prf.precision ||
                std::abs(*prf.precision - double(cm.tp) / double(cm.tp + cm.fp)) > 1e-12)
                prf_ok = false;
        } else if (prf.precision) {
            prf_ok = false;
        }
        if (cm.tp + cm.fn > 0) {
            if (!prf.recall ||
                std::abs(*prf.recall - double(cm.tp) / double(cm.tp + cm.fn)) > 1e-12)
                prf_ok = false;
        } else if (prf.recall) {
            prf_ok = false;
        }
        if (prf.precision && prf.recall && *prf.precision + *prf.recall > 0.0) {
            const double expected =
                2.0 * *prf.precision * *prf.recall / (*prf.precision + *prf.recall);
            if (!prf.f1 || std::abs(*prf.f1 - expected) > 1e-12) prf_ok = false;
        } else if (prf.f1) {
            prf_ok = false;
        }
    }

    // (b) percent_change at the baseline year is exactly zero.
    bool change_ok = true;
    for (int i = 0; i < 100; ++i) {
        HabitatSeries series;
        const int years = 2 + static_cast<int>(rng.next_below(5));
        for (int y = 0; y < years; ++y)
            for (int m = 1; m <= 12; m += 3)
                series.entries.push_back(
                    {2001 + y, m, 1.0 + 500.0 * rng.next_double(), {}});
        const auto changes = percent_change(series, 2001, std::nullopt);
        if (changes.front().first != 2001 || changes.front().second != 0.0) change_ok = false;
    }

    // (c) Raising the threshold never increases suitable area.
    bool monotone_ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        const GridSpec spec{12, 12, 70.0, 8.0, 0.25};
        Grid prob(spec);
        for (int r = 0; r < 12; ++r)
            for (int c = 0; c < 12; ++c)
                if (rng.next_double() > 0.1) prob.set(r, c, rng.next_double());
        double previous = std::numeric_limits<double>::infinity();
        for (double threshold = 0.1; threshold <= 0.91; threshold += 0.1) {
            const double area = suitable_area_km2(threshold_map(prob, 2001, 1, threshold));
            if (area > previous) monotone_ok = false;
            previous = area;
        }
    }

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "formula identities (PRF %s, baseline change %s, threshold monotone %s, "
                  "%.1f s)",
                  prf_ok ? "ok" : "FAIL", change_ok ? "ok" : "FAIL",
                  monotone_ok ? "ok" : "FAIL", timer.seconds());
    report(6, prf_ok && change_ok && monotone_ok, buf);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
