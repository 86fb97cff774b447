#include "forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "error.hpp"
#include "metrics.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace habitat {

void Hyperparams::validate(std::size_t n_features) const {
    if (n_estimators < 1) throw InvalidArgument("n_estimators must be >= 1");
    if (max_features < 1 || static_cast<std::size_t>(max_features) > n_features)
        throw InvalidArgument("max_features must be in [1, " + std::to_string(n_features) + "]");
    if (max_depth < 1) throw InvalidArgument("max_depth must be >= 1");
    if (min_samples_split < 2) throw InvalidArgument("min_samples_split must be >= 2");
    if (min_samples_leaf < 1) throw InvalidArgument("min_samples_leaf must be >= 1");
}

double gini(std::uint64_t n0, std::uint64_t n1) {
    const std::uint64_t n = n0 + n1;
    if (n == 0) throw InvalidArgument("gini impurity of an empty node is undefined");
    const double p0 = static_cast<double>(n0) / static_cast<double>(n);
    const double p1 = static_cast<double>(n1) / static_cast<double>(n);
    return 1.0 - p0 * p0 - p1 * p1;
}

namespace {

using uint128 = unsigned __int128;

/// Sum of squared class counts; the building block of the exact split score.
/// For a parent with counts (p0, p1) and children L/R, the impurity decrease
///   delta = G(parent) - (nL/n) G(L) - (nR/n) G(R)
/// reduces to (SL/nL + SR/nR - SP/n) / n with S = c0^2 + c1^2, so candidates
/// can be ranked by SL/nL + SR/nR alone, compared as exact fractions.
std::uint64_t sq_sum(std::uint64_t c0, std::uint64_t c1) { return c0 * c0 + c1 * c1; }

struct ExactScore {
    std::uint64_t sl = 0, nl = 0, sr = 0, nr = 0;

    /// this > other, comparing SL/nL + SR/nR cross-multiplied in 128 bits.
    bool better_than(const ExactScore& o) const {
        const uint128 lhs = (uint128(sl) * o.nl * o.nr) * nr + (uint128(sr) * o.nl * o.nr) * nl;
        const uint128 rhs = (uint128(o.sl) * nl * nr) * o.nr + (uint128(o.sr) * nl * nr) * o.nl;
        return lhs > rhs;
    }

    /// Strictly positive impurity decrease: SL/nL + SR/nR > SP/n.
    bool positive_gain(std::uint64_t sp) const {
        const std::uint64_t n = nl + nr;
        const uint128 lhs = uint128(n) * (uint128(sl) * nr + uint128(sr) * nl);
        const uint128 rhs = uint128(sp) * nl * nr;
        return lhs > rhs;
    }

    double decrease(std::uint64_t sp) const {
        const double n = static_cast<double>(nl + nr);
        const double q = static_cast<double>(sl) / static_cast<double>(nl) +
                         static_cast<double>(sr) / static_cast<double>(nr) -
                         static_cast<double>(sp) / n;
        return q / n;
    }
};

}  // namespace

std::optional<SplitCandidate> best_split(const LabeledDataset& data,
                                         std::span<const std::uint32_t> samples,
                                         std::span<const int> feature_subset,
                                         const Hyperparams& params) {
    const std::size_t n = samples.size();
    if (n < static_cast<std::size_t>(params.min_samples_split)) return std::nullopt;
    if (feature_subset.empty()) throw InvalidArgument("feature subset must be non-empty");

    std::uint64_t parent0 = 0, parent1 = 0;
    for (const auto i : samples) (data.samples[i].label == 1 ? parent1 : parent0)++;
    const std::uint64_t sp = sq_sum(parent0, parent1);

    std::optional<SplitCandidate> best;
    ExactScore best_score;
    const std::size_t min_leaf = static_cast<std::size_t>(params.min_samples_leaf);

    std::vector<std::uint32_t> order(samples.begin(), samples.end());
    for (const int f : feature_subset) {
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return data.samples[a].features[f] < data.samples[b].features[f];
        });
        std::uint64_t left0 = 0, left1 = 0;
        for (std::size_t k = 1; k < n; ++k) {
            (data.samples[order[k - 1]].label == 1 ? left1 : left0)++;
            const double prev = data.samples[order[k - 1]].features[f];
            const double next = data.samples[order[k]].features[f];
            if (!(prev < next)) continue;
            if (k < min_leaf || n - k < min_leaf) continue;
            const ExactScore score{sq_sum(left0, left1), k, sq_sum(parent0 - left0, parent1 - left1),
                                   n - k};
            if (!score.positive_gain(sp)) continue;
            // Features ascend and thresholds ascend within a feature, so
            // keeping the incumbent on ties yields the documented
            // (lower feature, lower threshold) tie-break.
            if (!best || score.better_than(best_score)) {
                best = SplitCandidate{f, prev + (next - prev) / 2.0, score.decrease(sp)};
                best_score = score;
            }
        }
    }
    return best;
}

namespace {

struct TreeBuilder {
    const LabeledDataset& data;
    const Hyperparams& params;
    Rng& rng;
    Tree nodes;
    std::vector<int> feature_pool;

    TreeBuilder(const LabeledDataset& d, const Hyperparams& p, Rng& r) : data(d), params(p), rng(r) {
        feature_pool.resize(d.n_features());
        std::iota(feature_pool.begin(), feature_pool.end(), 0);
    }

    std::vector<int> draw_features() {
        const std::size_t nf = feature_pool.size();
        const std::size_t mf = static_cast<std::size_t>(params.max_features);
        for (std::size_t i = 0; i < mf; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.next_below(nf - i));
            std::swap(feature_pool[i], feature_pool[j]);
        }
        std::vector<int> subset(feature_pool.begin(), feature_pool.begin() + mf);
        std::sort(subset.begin(), subset.end());
        return subset;
    }

    std::int32_t build(std::vector<std::uint32_t>& samples, int depth) {
        std::uint32_t c0 = 0, c1 = 0;
        for (const auto i : samples) (data.samples[i].label == 1 ? c1 : c0)++;
        const std::int32_t index = static_cast<std::int32_t>(nodes.size());
        nodes.push_back(TreeNode{-1, 0.0, -1, -1, c0, c1});

        const bool pure = c0 == 0 || c1 == 0;
        if (depth >= params.max_depth || pure ||
            samples.size() < static_cast<std::size_t>(params.min_samples_split))
            return index;

        const auto subset = draw_features();
        const auto split = best_split(data, samples, subset, params);
        if (!split) return index;

        std::vector<std::uint32_t> left, right;
        left.reserve(samples.size());
        right.reserve(samples.size());
        for (const auto i : samples) {
            (data.samples[i].features[split->feature] <= split->threshold ? left : right)
                .push_back(i);
        }
        samples.clear();
        samples.shrink_to_fit();

        nodes[index].feature = split->feature;
        nodes[index].threshold = split->threshold;
        const std::int32_t left_index = build(left, depth + 1);
        nodes[index].left = left_index;
        const std::int32_t right_index = build(right, depth + 1);
        nodes[index].right = right_index;
        return index;
    }
};

Tree fit_tree_with_rng(const LabeledDataset& data, std::span<const std::uint32_t> bootstrap,
                       const Hyperparams& params, Rng& rng) {
    if (bootstrap.empty()) throw InvalidArgument("cannot fit a tree on an empty sample set");
    TreeBuilder builder(data, params, rng);
    std::vector<std::uint32_t> samples(bootstrap.begin(), bootstrap.end());
    builder.build(samples, 0);
    return std::move(builder.nodes);
}

}  // namespace

Tree fit_tree(const LabeledDataset& data, std::span<const std::uint32_t> bootstrap,
              const Hyperparams& params, std::uint64_t seed) {
    params.validate(data.n_features());
    Rng rng(seed);
    return fit_tree_with_rng(data, bootstrap, params, rng);
}

double RandomForest::tree_proba(std::size_t t, std::span<const double> x) const {
    const Tree& tree = trees[t];
    std::int32_t node = 0;
    while (!tree[node].is_leaf()) {
        node = x[tree[node].feature] <= tree[node].threshold ? tree[node].left
                                                             : tree[node].right;
    }
    return static_cast<double>(tree[node].n_presence) / static_cast<double>(tree[node].total());
}

double RandomForest::predict_proba(std::span<const double> x) const {
    if (x.size() != n_features())
        throw InvalidArgument("feature vector has " + std::to_string(x.size()) +
                              " entries, forest expects " + std::to_string(n_features()));
    double sum = 0.0;
    for (std::size_t t = 0; t < trees.size(); ++t) sum += tree_proba(t, x);
    return sum / static_cast<double>(trees.size());
}

int RandomForest::predict_class(std::span<const double> x, double threshold) const {
    return predict_proba(x) >= threshold ? 1 : 0;
}

RandomForest fit_forest(const LabeledDataset& train, const Hyperparams& params,
                        std::uint64_t master_seed, int n_threads) {
    params.validate(train.n_features());
    const auto counts = train.class_counts();
    if (counts[0] == 0 || counts[1] == 0)
        throw InvalidArgument("training set must contain both classes (" +
                              std::to_string(counts[0]) + " absence / " +
                              std::to_string(counts[1]) + " presence)");

    const std::size_t n = train.size();
    const std::size_t n_trees = static_cast<std::size_t>(params.n_estimators);
    RandomForest forest;
    forest.params = params;
    forest.feature_names = train.feature_names;
    forest.per_tree_seeds.resize(n_trees);
    forest.trees.resize(n_trees);
    forest.oob_indices.resize(n_trees);
    for (std::size_t t = 0; t < n_trees; ++t)
        forest.per_tree_seeds[t] = derive_seed(master_seed, t);

    parallel_for(n_trees, n_threads, [&](std::size_t begin, std::size_t end) {
        std::vector<std::uint32_t> bootstrap(n);
        std::vector<std::uint8_t> in_bag(n);
        for (std::size_t t = begin; t < end; ++t) {
            // Substream 0 draws the bootstrap, substream 1 grows the tree, so
            // a forest tree is reproducible through fit_tree alone.
            Rng boot_rng(derive_seed(forest.per_tree_seeds[t], 0));
            std::fill(in_bag.begin(), in_bag.end(), 0);
            for (std::size_t i = 0; i < n; ++i) {
                const auto pick = static_cast<std::uint32_t>(boot_rng.next_below(n));
                bootstrap[i] = pick;
                in_bag[pick] = 1;
            }
            Rng tree_rng(derive_seed(forest.per_tree_seeds[t], 1));
            forest.trees[t] = fit_tree_with_rng(train, bootstrap, params, tree_rng);
            auto& oob = forest.oob_indices[t];
            for (std::size_t i = 0; i < n; ++i)
                if (!in_bag[i]) oob.push_back(static_cast<std::uint32_t>(i));
        }
    });
    return forest;
}

std::vector<double> importance_mdi(const RandomForest& forest) {
    std::vector<double> totals(forest.n_features(), 0.0);
    for (const auto& tree : forest.trees) {
        const double root_n = static_cast<double>(tree[0].total());
        for (const auto& node : tree) {
            if (node.is_leaf()) continue;
            const auto& left = tree[node.left];
            const auto& right = tree[node.right];
            const ExactScore score{sq_sum(left.n_absence, left.n_presence), left.total(),
                                   sq_sum(right.n_absence, right.n_presence), right.total()};
            const double delta = score.decrease(sq_sum(node.n_absence, node.n_presence));
            totals[node.feature] += (static_cast<double>(node.total()) / root_n) * delta;
        }
    }
    for (auto& v : totals) v /= static_cast<double>(forest.trees.size());
    const double sum = std::accumulate(totals.begin(), totals.end(), 0.0);
    if (sum > 0.0)
        for (auto& v : totals) v /= sum;
    return totals;
}

namespace {

double dataset_accuracy(const RandomForest& forest, const LabeledDataset& test,
                        const std::vector<std::vector<double>>& columns) {
    std::size_t correct = 0;
    std::vector<double> x(forest.n_features());
    for (std::size_t i = 0; i < test.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = columns[j][i];
        if (forest.predict_class(x) == test.samples[i].label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace

std::vector<double> importance_permutation(const RandomForest& forest, const LabeledDataset& test,
                                           int n_repeats, std::uint64_t seed) {
    if (test.size() == 0) throw InvalidArgument("permutation importance requires a non-empty test set");
    if (test.feature_names != forest.feature_names)
        throw InvalidArgument("test set features do not match the forest");
    if (n_repeats < 1) throw InvalidArgument("n_repeats must be >= 1");

    const std::size_t nf = forest.n_features();
    const std::size_t n = test.size();
    std::vector<std::vector<double>> columns(nf, std::vector<double>(n));
    for (std::size_t j = 0; j < nf; ++j)
        for (std::size_t i = 0; i < n; ++i) columns[j][i] = test.samples[i].features[j];

    const double baseline = dataset_accuracy(forest, test, columns);
    std::vector<double> importance(nf, 0.0);
    std::vector<double> saved;
    for (std::size_t j = 0; j < nf; ++j) {
        double drop_sum = 0.0;
        for (int rep = 0; rep < n_repeats; ++rep) {
            Rng rng(derive_seed(seed, j * static_cast<std::size_t>(n_repeats) +
                                          static_cast<std::size_t>(rep)));
            saved = columns[j];
            rng.shuffle(columns[j]);
            drop_sum += baseline - dataset_accuracy(forest, test, columns);
            columns[j] = saved;
        }
        importance[j] = drop_sum / static_cast<double>(n_repeats);
    }
    return importance;
}

LabeledDataset drop_least_important(const LabeledDataset& ds, std::span<const double> importance,
                                    int k) {
    if (importance.size() != ds.n_features())
        throw InvalidArgument("importance vector length does not match the feature count");
    if (k < 0 || static_cast<std::size_t>(k) >= ds.n_features())
        throw InvalidArgument("k must be in [0, n_features)");
    std::vector<std::size_t> order(ds.n_features());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return importance[a] < importance[b]; });
    std::vector<bool> dropped(ds.n_features(), false);
    for (int i = 0; i < k; ++i) dropped[order[i]] = true;
    std::vector<std::string> kept;
    for (std::size_t j = 0; j < ds.n_features(); ++j)
        if (!dropped[j]) kept.push_back(ds.feature_names[j]);
    return ds.select_features(kept);
}

OobResult oob_score(const RandomForest& forest, const LabeledDataset& train) {
    const std::size_t n = train.size();
    std::vector<double> proba_sum(n, 0.0);
    std::vector<std::uint32_t> votes(n, 0);
    for (std::size_t t = 0; t < forest.trees.size(); ++t) {
        for (const auto i : forest.oob_indices[t]) {
            proba_sum[i] += forest.tree_proba(t, train.samples[i].features);
            ++votes[i];
        }
    }
    OobResult result;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (votes[i] == 0) {
            ++result.uncovered;
            continue;
        }
        ++result.evaluated;
        const int pred = proba_sum[i] / votes[i] >= 0.5 ? 1 : 0;
        if (pred == train.samples[i].label) ++correct;
    }
    if (result.evaluated == 0)
        throw Error("no training sample is out-of-bag for any tree; cannot compute OOB score");
    result.score = static_cast<double>(correct) / static_cast<double>(result.evaluated);
    return result;
}

namespace {

std::vector<std::vector<std::uint32_t>> stratified_folds(const LabeledDataset& data, int folds,
                                                         std::uint64_t seed) {
    std::vector<std::vector<std::uint32_t>> fold_members(folds);
    for (int label = 0; label <= 1; ++label) {
        std::vector<std::uint32_t> members;
        for (std::size_t i = 0; i < data.size(); ++i)
            if (data.samples[i].label == label) members.push_back(static_cast<std::uint32_t>(i));
        Rng rng(derive_seed(seed, 0x0F01Du + static_cast<std::uint64_t>(label)));
        rng.shuffle(members);
        for (std::size_t i = 0; i < members.size(); ++i)
            fold_members[i % folds].push_back(members[i]);
    }
    for (const auto& members : fold_members) {
        std::size_t pos = 0;
        for (const auto i : members) pos += data.samples[i].label;
        if (members.empty() || pos == 0 || pos == members.size())
            throw InvalidArgument(
                "a cross-validation fold has a single class; use fewer folds or more data");
    }
    return fold_members;
}

LabeledDataset subset(const LabeledDataset& data, std::span<const std::uint32_t> indices) {
    LabeledDataset out;
    out.feature_names = data.feature_names;
    out.samples.reserve(indices.size());
    for (const auto i : indices) out.samples.push_back(data.samples[i]);
    return out;
}

}  // namespace

GridSearchResult grid_search(const LabeledDataset& train, std::span<const int> n_estimators_grid,
                             std::span<const int> max_features_grid,
                             std::span<const int> max_depth_grid, int folds,
                             std::uint64_t master_seed, int n_threads) {
    if (folds < 2) throw InvalidArgument("grid search requires folds >= 2");
    if (n_estimators_grid.empty() || max_features_grid.empty() || max_depth_grid.empty())
        throw InvalidArgument("hyper-parameter grid must be non-empty");

    const auto fold_members = stratified_folds(train, folds, master_seed);
    GridSearchResult result;
    std::size_t combo = 0;
    for (const int ne : n_estimators_grid) {
        for (const int mf : max_features_grid) {
            for (const int md : max_depth_grid) {
                GridSearchRow row;
                row.params = Hyperparams{ne, mf, md, 2, 1};
                row.params.validate(train.n_features());
                for (int f = 0; f < folds; ++f) {
                    std::vector<std::uint32_t> train_idx;
                    for (int g = 0; g < folds; ++g)
                        if (g != f)
                            train_idx.insert(train_idx.end(), fold_members[g].begin(),
                                             fold_members[g].end());
                    const auto fold_train = subset(train, train_idx);
                    const auto fold_test = subset(train, fold_members[f]);
                    const auto forest =
                        fit_forest(fold_train, row.params,
                                   derive_seed(master_seed, 1 + combo * folds + f), n_threads);
                    std::vector<int> labels, preds;
                    labels.reserve(fold_test.size());
                    preds.reserve(fold_test.size());
                    for (const auto& s : fold_test.samples) {
                        labels.push_back(s.label);
                        preds.push_back(forest.predict_class(s.features));
                    }
                    const auto prf = precision_recall_f1(confusion(labels, preds));
                    if (prf.f1) {
                        row.fold_f1.push_back(*prf.f1);
                    } else {
                        row.fold_f1.push_back(0.0);
                        ++row.undefined_folds;
                    }
                }
                row.mean_f1 = std::accumulate(row.fold_f1.begin(), row.fold_f1.end(), 0.0) /
                              static_cast<double>(folds);
                result.table.push_back(std::move(row));
                ++combo;
            }
        }
    }

    const auto better = [](const GridSearchRow& a, const GridSearchRow& b) {
        if (a.mean_f1 != b.mean_f1) return a.mean_f1 > b.mean_f1;
        if (a.params.n_estimators != b.params.n_estimators)
            return a.params.n_estimators < b.params.n_estimators;
        if (a.params.max_depth != b.params.max_depth) return a.params.max_depth < b.params.max_depth;
        return a.params.max_features < b.params.max_features;
    };
    const GridSearchRow* best = &result.table.front();
    for (const auto& row : result.table)
        if (better(row, *best)) best = &row;
    result.best = best->params;
    return result;
}

namespace {

constexpr int kForestFormatVersion = 1;

}  // namespace

std::string serialize_forest(const RandomForest& forest) {
    using nlohmann::json;
    json trees = json::array();
    for (const auto& tree : forest.trees) {
        json t;
        auto& feature = t["feature"] = json::array();
        auto& threshold = t["threshold"] = json::array();
        auto& left = t["left"] = json::array();
        auto& right = t["right"] = json::array();
        auto& n0 = t["n0"] = json::array();
        auto& n1 = t["n1"] = json::array();
        for (const auto& node : tree) {
            feature.push_back(node.feature);
            threshold.push_back(node.threshold);
            left.push_back(node.left);
            right.push_back(node.right);
            n0.push_back(node.n_absence);
            n1.push_back(node.n_presence);
        }
        trees.push_back(std::move(t));
    }
    const json doc{{"format", "habitat-forest"},
                   {"version", kForestFormatVersion},
                   {"params",
                    {{"n_estimators", forest.params.n_estimators},
                     {"max_features", forest.params.max_features},
                     {"max_depth", forest.params.max_depth},
                     {"min_samples_split", forest.params.min_samples_split},
                     {"min_samples_leaf", forest.params.min_samples_leaf}}},
                   {"feature_names", forest.feature_names},
                   {"per_tree_seeds", forest.per_tree_seeds},
                   {"oob_indices", forest.oob_indices},
                   {"trees", trees}};
    return doc.dump() + "\n";
}

RandomForest parse_forest(std::string_view bytes) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid forest file: ") + e.what());
    }
    try {
        if (!doc.is_object() || doc.value("format", "") != "habitat-forest")
            throw ParseError("not a habitat-forest document");
        if (doc.value("version", -1) != kForestFormatVersion)
            throw VersionError("unsupported forest format version " +
                               doc.value("version", json{}).dump() + ", expected " +
                               std::to_string(kForestFormatVersion));
        RandomForest forest;
        const auto& params = doc.at("params");
        forest.params.n_estimators = params.at("n_estimators").get<int>();
        forest.params.max_features = params.at("max_features").get<int>();
        forest.params.max_depth = params.at("max_depth").get<int>();
        forest.params.min_samples_split = params.at("min_samples_split").get<int>();
        forest.params.min_samples_leaf = params.at("min_samples_leaf").get<int>();
        forest.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
        forest.per_tree_seeds = doc.at("per_tree_seeds").get<std::vector<std::uint64_t>>();
        forest.oob_indices = doc.at("oob_indices").get<std::vector<std::vector<std::uint32_t>>>();
        const auto& trees = doc.at("trees");
        if (!trees.is_array()) throw ParseError("trees must be an array");
        forest.trees.reserve(trees.size());
        for (std::size_t t = 0; t < trees.size(); ++t) {
            const auto& entry = trees[t];
            const auto& feature = entry.at("feature");
            const auto& threshold = entry.at("threshold");
            const auto& left = entry.at("left");
            const auto& right = entry.at("right");
            const auto& n0 = entry.at("n0");
            const auto& n1 = entry.at("n1");
            const std::size_t count = feature.size();
            if (threshold.size() != count || left.size() != count || right.size() != count ||
                n0.size() != count || n1.size() != count || count == 0)
                throw ParseError("tree " + std::to_string(t) + " has inconsistent node arrays");
            Tree tree(count);
            for (std::size_t i = 0; i < count; ++i) {
                tree[i].feature = feature[i].get<std::int32_t>();
                tree[i].threshold = threshold[i].get<double>();
                tree[i].left = left[i].get<std::int32_t>();
                tree[i].right = right[i].get<std::int32_t>();
                tree[i].n_absence = n0[i].get<std::uint32_t>();
                tree[i].n_presence = n1[i].get<std::uint32_t>();
                const bool leaf = tree[i].feature < 0;
                const bool children_ok =
                    leaf ? (tree[i].left == -1 && tree[i].right == -1)
                         : (tree[i].left > 0 && tree[i].right > 0 &&
                            tree[i].left < static_cast<std::int32_t>(count) &&
                            tree[i].right < static_cast<std::int32_t>(count));
                if (!children_ok ||
                    (!leaf && tree[i].feature >= static_cast<std::int32_t>(
                                                     forest.feature_names.size())) ||
                    (leaf && tree[i].total() == 0))
                    throw ParseError("tree " + std::to_string(t) + " node " + std::to_string(i) +
                                     " is malformed");
            }
            forest.trees.push_back(std::move(tree));
        }
        if (forest.trees.size() != static_cast<std::size_t>(forest.params.n_estimators) ||
            forest.per_tree_seeds.size() != forest.trees.size() ||
            forest.oob_indices.size() != forest.trees.size())
            throw ParseError("tree, seed and OOB array lengths disagree with n_estimators");
        return forest;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid forest file: ") + e.what());
    }
}

}  // namespace habitat
