#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dataset.hpp"

namespace habitat {

struct Hyperparams {
    int n_estimators = 500;
    int max_features = 2;
    int max_depth = 22;
    int min_samples_split = 2;
    int min_samples_leaf = 1;

    void validate(std::size_t n_features) const;
    bool operator==(const Hyperparams&) const = default;
};

/// Node of a CART tree, stored in a flat array with the root at index 0.
/// Internal nodes route x[feature] <= threshold to `left`, else `right`.
/// Every node keeps the class counts of the training samples that reached
/// it, which is what prediction (leaf vote fractions) and impurity-based
/// importance read back.
struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint32_t n_absence = 0;
    std::uint32_t n_presence = 0;

    bool is_leaf() const { return feature < 0; }
    std::uint32_t total() const { return n_absence + n_presence; }
};

using Tree = std::vector<TreeNode>;

/// Gini impurity of a two-class node: 1 - p0^2 - p1^2. Zero total counts
/// are an error.
double gini(std::uint64_t n0, std::uint64_t n1);

struct SplitCandidate {
    int feature = -1;
    double threshold = 0.0;
    double impurity_decrease = 0.0;
};

/// Best Gini split of `samples` over `feature_subset`. Candidate thresholds
/// are midpoints between consecutive distinct sorted values of each feature;
/// candidates are compared by exact rational arithmetic, so the winner is
/// reproducible and independent of floating-point noise. Ties go to the
/// lower feature index, then the lower threshold. Returns nullopt when no
/// candidate strictly decreases impurity or all violate min_samples_leaf.
std::optional<SplitCandidate> best_split(const LabeledDataset& data,
                                         std::span<const std::uint32_t> samples,
                                         std::span<const int> feature_subset,
                                         const Hyperparams& params);

/// Grows one CART tree on a caller-supplied bootstrap multiset. At each node
/// max_features distinct features are drawn without replacement from the
/// seeded stream, split by best_split, recursing until max_depth, purity, a
/// none-split or min_samples_split. Deterministic given the seed.
Tree fit_tree(const LabeledDataset& data, std::span<const std::uint32_t> bootstrap,
              const Hyperparams& params, std::uint64_t seed);

struct RandomForest {
    Hyperparams params;
    std::vector<std::string> feature_names;
    std::vector<std::uint64_t> per_tree_seeds;
    std::vector<Tree> trees;
    /// Per tree, the sorted training indices absent from its bootstrap.
    std::vector<std::vector<std::uint32_t>> oob_indices;

    std::size_t n_features() const { return feature_names.size(); }

    /// Presence fraction of the leaf x lands in, for tree t.
    double tree_proba(std::size_t t, std::span<const double> x) const;

    /// Soft vote: mean over trees of leaf presence fractions, in [0, 1].
    double predict_proba(std::span<const double> x) const;

    /// 1 iff predict_proba(x) >= threshold (ties classify as presence).
    int predict_class(std::span<const double> x, double threshold = 0.5) const;
};

/// Trains params.n_estimators trees. Tree t draws its bootstrap and feature
/// subsets from a stream seeded with derive_seed(master_seed, t), so the
/// serialized result is byte-identical for any n_threads.
RandomForest fit_forest(const LabeledDataset& train, const Hyperparams& params,
                        std::uint64_t master_seed, int n_threads = 1);

/// Mean decrease in impurity per feature: sum over nodes splitting on the
/// feature of (node_n / root_n) * impurity decrease, averaged over trees and
/// normalized to sum 1. All-leaf forests yield all zeros.
std::vector<double> importance_mdi(const RandomForest& forest);

/// Mean decrease in accuracy on `test` over n_repeats seeded permutations of
/// each feature column.
std::vector<double> importance_permutation(const RandomForest& forest, const LabeledDataset& test,
                                           int n_repeats, std::uint64_t seed);

/// Drops the k lowest-importance features (ties resolved toward the lower
/// feature index). k must be smaller than the feature count.
LabeledDataset drop_least_important(const LabeledDataset& ds, std::span<const double> importance,
                                    int k);

struct OobResult {
    double score = 0.0;        // accuracy of out-of-bag soft-vote predictions
    std::size_t evaluated = 0;
    std::size_t uncovered = 0;  // samples in no tree's OOB set, excluded
};

OobResult oob_score(const RandomForest& forest, const LabeledDataset& train);

struct GridSearchRow {
    Hyperparams params;
    double mean_f1 = 0.0;
    std::vector<double> fold_f1;
    int undefined_folds = 0;  // folds whose F1 had an empty denominator, scored 0
};

struct GridSearchResult {
    Hyperparams best;
    std::vector<GridSearchRow> table;
};

/// Stratified k-fold cross-validated F1 over the hyper-parameter product
/// grid. Ties go to the smaller model: fewer trees, then shallower, then
/// fewer features per split.
GridSearchResult grid_search(const LabeledDataset& train, std::span<const int> n_estimators_grid,
                             std::span<const int> max_features_grid,
                             std::span<const int> max_depth_grid, int folds,
                             std::uint64_t master_seed, int n_threads = 1);

/// Versioned JSON serialization; parse_forest(serialize_forest(f)) restores
/// the forest exactly, including seeds and OOB bookkeeping.
std::string serialize_forest(const RandomForest& forest);
RandomForest parse_forest(std::string_view bytes);

}  // namespace habitat
