#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "analysis.hpp"
#include "error.hpp"
#include "rng.hpp"
#include "test_util.hpp"

using namespace habitat;

namespace {

RandomForest constant_forest(const std::vector<std::string>& names, double presence_fraction) {
    RandomForest forest;
    forest.params = Hyperparams{1, 1, 1, 2, 1};
    forest.feature_names = names;
    forest.per_tree_seeds = {0};
    Tree leaf(1);
    const auto presences = static_cast<std::uint32_t>(std::lround(presence_fraction * 100));
    leaf[0] = TreeNode{-1, 0.0, -1, -1, 100 - presences, presences};
    forest.trees = {leaf};
    forest.oob_indices = {{}};
    return forest;
}

/// Forest of one stump over feature "x": x <= split -> absence leaf,
/// x > split -> presence leaf.
RandomForest stump_forest(double split) {
    RandomForest forest;
    forest.params = Hyperparams{1, 1, 1, 2, 1};
    forest.feature_names = {"x"};
    forest.per_tree_seeds = {0};
    Tree tree(3);
    tree[0] = TreeNode{0, split, 1, 2, 10, 10};
    tree[1] = TreeNode{-1, 0.0, -1, -1, 10, 0};
    tree[2] = TreeNode{-1, 0.0, -1, -1, 0, 10};
    forest.trees = {tree};
    forest.oob_indices = {{}};
    return forest;
}

FeatureStack single_layer_stack(const Grid& grid, const std::string& name, int year, int month) {
    FeatureStack stack;
    stack.spec = grid.spec();
    stack.year = year;
    stack.month = month;
    stack.names = {name};
    stack.layers = {grid};
    return stack;
}

NamedPolygon rectangle_zone(const std::string& name, double x0, double y0, double x1, double y1) {
    return NamedPolygon{name, {Ring{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}}}}};
}

}  // namespace

TEST_CASE("predict_map: constant stack yields a constant probability map") {
    const GridSpec spec{5, 4, 70.0, 8.0, 0.5};
    const auto forest = constant_forest({"x"}, 0.73);
    const auto stack = single_layer_stack(Grid::constant(spec, 1.0), "x", 2001, 3);
    const auto map = predict_map(forest, stack, 0.5);
    for (int r = 0; r < spec.nrows; ++r)
        for (int c = 0; c < spec.ncols; ++c) {
            CHECK(map.probability.at(r, c) == 0.73);
            CHECK(map.binary.at(r, c) == 1.0);
        }
    CHECK(map.year == 2001);
    CHECK(map.month == 3);
}

TEST_CASE("predict_map: nodata cells are nodata in both outputs") {
    const GridSpec spec{3, 3, 0.0, 0.0, 1.0};
    Grid layer = Grid::constant(spec, 2.0);
    layer.set_nodata(1, 1);
    const auto map = predict_map(stump_forest(1.0), single_layer_stack(layer, "x", 2000, 1), 0.5);
    CHECK(map.probability.is_nodata(1, 1));
    CHECK(map.binary.is_nodata(1, 1));
    CHECK_FALSE(map.probability.is_nodata(0, 0));
    CHECK(map.probability.at(0, 0) == 1.0);  // 2.0 > 1.0 routes to the presence leaf
}

TEST_CASE("predict_map: every cell equals a direct predict_proba call") {
    Rng rng(61);
    const GridSpec spec{30, 30, 70.0, 8.0, 0.1};
    Grid layer(spec);
    for (int r = 0; r < 30; ++r)
        for (int c = 0; c < 30; ++c)
            if (rng.next_double() > 0.05) layer.set(r, c, rng.next_double() * 4.0 - 2.0);
    const auto forest = stump_forest(0.0);
    const auto stack = single_layer_stack(layer, "x", 2001, 1);
    const auto map = predict_map(forest, stack, 0.4, 2);
    for (int r = 0; r < 30; ++r) {
        for (int c = 0; c < 30; ++c) {
            if (layer.is_nodata(r, c)) {
                CHECK(map.probability.is_nodata(r, c));
                continue;
            }
            const std::vector<double> x{layer.at(r, c)};
            CHECK(map.probability.at(r, c) == forest.predict_proba(x));
            CHECK(map.binary.at(r, c) == (map.probability.at(r, c) >= 0.4 ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("predict_map: layer name or order mismatch is an error") {
    const GridSpec spec{2, 2, 0.0, 0.0, 1.0};
    FeatureStack stack;
    stack.spec = spec;
    stack.names = {"y"};
    stack.layers = {Grid::constant(spec, 1.0)};
    CHECK_THROWS_AS(predict_map(stump_forest(0.0), stack, 0.5), InvalidArgument);
    CHECK_THROWS_AS(predict_map(stump_forest(0.0), stack, 1.5), InvalidArgument);
}

TEST_CASE("suitable_area: all-absence maps cover zero area") {
    const GridSpec spec{4, 4, 70.0, 8.0, 0.5};
    const auto map = threshold_map(Grid::constant(spec, 0.2), 2001, 1, 0.5);
    CHECK(suitable_area_km2(map) == 0.0);
}

TEST_CASE("suitable_area: one equatorial tenth-degree cell") {
    const GridSpec spec{3, 2, 0.0, -0.1, 0.1};
    Grid prob = Grid::constant(spec, 0.0);
    prob.set(0, 1, 0.9);  // row 0 spans [0, 0.1] degrees latitude
    const auto map = threshold_map(prob, 2001, 1, 0.5);
    const double off_center = geo::cell_area_km2(0.0, 0.1, 0.1);
    CHECK(suitable_area_km2(map) == doctest::Approx(off_center).epsilon(1e-12));
    // And the canonical centered value for reference.
    CHECK(geo::cell_area_km2(-0.05, 0.05, 0.1) ==
          doctest::Approx(123.64344298810575).epsilon(1e-12));
}

TEST_CASE("suitable_area: zonal additivity over disjoint zones") {
    Rng rng(62);
    const GridSpec spec{10, 10, 70.0, 8.0, 0.2};
    Grid prob(spec);
    for (int r = 0; r < 10; ++r)
        for (int c = 0; c < 10; ++c) prob.set(r, c, rng.next_double());
    const auto map = threshold_map(prob, 2001, 1, 0.5);
    // Quadrants tile the region exactly.
    const auto q1 = rectangle_zone("q1", 70.0, 8.0, 71.0, 9.0);
    const auto q2 = rectangle_zone("q2", 71.0, 8.0, 72.0, 9.0);
    const auto q3 = rectangle_zone("q3", 70.0, 9.0, 71.0, 10.0);
    const auto q4 = rectangle_zone("q4", 71.0, 9.0, 72.0, 10.0);
    const double total = suitable_area_km2(map);
    const double sum = suitable_area_km2(map, &q1) + suitable_area_km2(map, &q2) +
                       suitable_area_km2(map, &q3) + suitable_area_km2(map, &q4);
    CHECK(sum == doctest::Approx(total).epsilon(1e-9));
    // A partial zone stays below the total.
    CHECK(suitable_area_km2(map, &q1) <= total);
}

TEST_CASE("suitable_area: raising the threshold never increases area") {
    Rng rng(63);
    for (int trial = 0; trial < 50; ++trial) {
        const GridSpec spec{8, 8, 70.0 + trial * 0.01, 8.0, 0.25};
        Grid prob(spec);
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c)
                if (rng.next_double() > 0.1) prob.set(r, c, rng.next_double());
        double previous = std::numeric_limits<double>::infinity();
        for (double threshold = 0.1; threshold <= 0.91; threshold += 0.1) {
            const double area = suitable_area_km2(threshold_map(prob, 2001, 1, threshold));
            CHECK(area <= previous);
            previous = area;
        }
    }
}

TEST_CASE("monthly_series: single map, zone columns, ordering, duplicates") {
    const GridSpec spec{4, 4, 70.0, 8.0, 0.5};
    std::vector<HabitatMap> maps;
    maps.push_back(threshold_map(Grid::constant(spec, 0.9), 2002, 2, 0.5));
    maps.push_back(threshold_map(Grid::constant(spec, 0.9), 2001, 12, 0.5));
    PolygonSet zones;
    zones.role = PolygonRole::zone;
    zones.polygons = {rectangle_zone("west", 70.0, 8.0, 71.0, 10.0),
                      rectangle_zone("east", 71.0, 8.0, 72.0, 10.0)};
    const auto series = monthly_series(maps, zones);
    REQUIRE(series.entries.size() == 2);
    CHECK(series.zone_names == std::vector<std::string>{"west", "east"});
    CHECK(series.entries[0].year == 2001);  // sorted by (year, month)
    CHECK(series.entries[0].month == 12);
    for (const auto& entry : series.entries) {
        REQUIRE(entry.zone_km2.size() == 2);
        CHECK(entry.zone_km2[0] + entry.zone_km2[1] <= entry.total_km2 + 1e-9);
    }
    maps.push_back(threshold_map(Grid::constant(spec, 0.1), 2001, 12, 0.5));
    CHECK_THROWS_AS(monthly_series(maps, zones), InvalidArgument);
}

TEST_CASE("monthly_series: constructed monsoon fixture peaks in Sep-Nov") {
    // Suitable fraction follows a seasonal bump centered on October.
    const GridSpec spec{10, 10, 70.0, 8.0, 0.2};
    const double seasonal[12] = {0.05, 0.05, 0.08, 0.10, 0.12, 0.20,
                                 0.35, 0.55, 0.80, 0.95, 0.85, 0.30};
    std::vector<HabitatMap> maps;
    for (int month = 1; month <= 12; ++month) {
        Grid prob(spec);
        const int suitable_cells = static_cast<int>(std::lround(seasonal[month - 1] * 100));
        int placed = 0;
        for (int r = 0; r < 10; ++r)
            for (int c = 0; c < 10; ++c) {
                prob.set(r, c, placed < suitable_cells ? 0.9 : 0.1);
                ++placed;
            }
        maps.push_back(threshold_map(prob, 2001, month, 0.5));
    }
    const auto series = monthly_series(maps, PolygonSet{PolygonRole::zone, {}});
    const auto peak = std::max_element(
        series.entries.begin(), series.entries.end(),
        [](const auto& a, const auto& b) { return a.total_km2 < b.total_km2; });
    CHECK(peak->month >= 9);
    CHECK(peak->month <= 11);
}

TEST_CASE("percent_change: baseline is exactly zero, halving is -50") {
    HabitatSeries series;
    series.zone_names = {};
    series.entries = {{2001, 1, 100.0, {}}, {2001, 7, 140.0, {}},
                      {2002, 1, 50.0, {}},  {2002, 7, 70.0, {}}};
    const auto changes = percent_change(series, 2001, std::nullopt);
    REQUIRE(changes.size() == 2);
    CHECK(changes[0].first == 2001);
    CHECK(changes[0].second == 0.0);
    CHECK(changes[1].second == doctest::Approx(-50.0).epsilon(1e-12));
}

TEST_CASE("percent_change: matches hand-computed annual means") {
    // Annual means: 2001 -> 80, 2002 -> 100, 2003 -> 64.
    HabitatSeries series;
    series.zone_names = {"z"};
    series.entries = {{2001, 3, 60.0, {30.0}}, {2001, 9, 100.0, {10.0}},
                      {2002, 3, 90.0, {20.0}}, {2002, 9, 110.0, {40.0}},
                      {2003, 3, 50.0, {5.0}},  {2003, 9, 78.0, {15.0}}};
    const auto changes = percent_change(series, 2001, std::nullopt);
    REQUIRE(changes.size() == 3);
    CHECK(changes[1].second == doctest::Approx(25.0).epsilon(1e-12));   // 100/80 - 1
    CHECK(changes[2].second == doctest::Approx(-20.0).epsilon(1e-12));  // 64/80 - 1
    const auto zone = percent_change(series, 2001, std::size_t{0});
    CHECK(zone[1].second == doctest::Approx(50.0).epsilon(1e-12));  // 30 vs 20
    CHECK(zone[2].second == doctest::Approx(-50.0).epsilon(1e-12));
}

TEST_CASE("percent_change: zero or missing baseline area is an error") {
    HabitatSeries series;
    series.entries = {{2001, 1, 0.0, {}}, {2002, 1, 10.0, {}}};
    CHECK_THROWS_AS(percent_change(series, 2001, std::nullopt), InvalidArgument);
    CHECK_THROWS_AS(percent_change(series, 1999, std::nullopt), InvalidArgument);
}

TEST_CASE("series text: write/parse round trip") {
    HabitatSeries series;
    series.zone_names = {"south", "north"};
    series.entries = {{2001, 1, 123.5, {10.25, 20.75}}, {2001, 2, 150.0, {11.0, 21.0}}};
    const std::string text = write_series(series, '\t');
    CHECK(text.starts_with("year\tmonth\ttotal_km2\tsouth_km2\tnorth_km2\n"));
    const auto back = parse_series(text, '\t');
    CHECK(back.zone_names == series.zone_names);
    REQUIRE(back.entries.size() == 2);
    CHECK(back.entries[0].total_km2 == 123.5);
    CHECK(back.entries[1].zone_km2[1] == 21.0);
}

TEST_CASE("render: white-to-red ramp with gray nodata, deterministic bytes") {
    const GridSpec spec{2, 2, 0.0, 0.0, 1.0};
    Grid prob(spec);
    prob.set(0, 0, 0.0);
    prob.set(0, 1, 1.0);
    prob.set(1, 0, 0.5);
    const auto map = threshold_map(prob, 2001, 1, 0.5);
    const std::string image = render_map_image(map, RenderMode::probability);
    CHECK(image.starts_with("P6\n2 2\n255\n"));
    const auto* pixels = reinterpret_cast<const unsigned char*>(image.data() + 11);
    CHECK(pixels[0] == 255);  // p=0 -> white
    CHECK(pixels[1] == 255);
    CHECK(pixels[2] == 255);
    CHECK(pixels[3] == 255);  // p=1 -> pure red
    CHECK(pixels[4] == 0);
    CHECK(pixels[5] == 0);
    CHECK(pixels[9] == 128);  // nodata -> gray
    CHECK(pixels[10] == 128);
    CHECK(pixels[11] == 128);
    CHECK(render_map_image(map, RenderMode::probability) == image);

    const std::string binary = render_map_image(map, RenderMode::binary);
    const auto* bin_pixels = reinterpret_cast<const unsigned char*>(binary.data() + 11);
    CHECK(bin_pixels[0] == 255);  // 0 -> white
    CHECK(bin_pixels[1] == 255);
    CHECK(bin_pixels[3] == 255);  // 1 -> red
    CHECK(bin_pixels[4] == 0);
}

TEST_CASE("threshold_map: binary layer matches the documented predicate") {
    Rng rng(64);
    const GridSpec spec{6, 6, 70.0, 8.0, 0.5};
    Grid prob(spec);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            if (rng.next_double() > 0.2) prob.set(r, c, rng.next_double());
    const auto map = threshold_map(prob, 2001, 1, 0.37);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) {
            if (prob.is_nodata(r, c)) {
                CHECK(map.binary.is_nodata(r, c));
            } else {
                CHECK(map.binary.at(r, c) == (prob.at(r, c) >= 0.37 ? 1.0 : 0.0));
            }
        }
}
