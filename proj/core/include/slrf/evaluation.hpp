#pragma once

#include <cstdint>
#include <vector>

#include "slrf/classifier.hpp"
#include "slrf/dataset.hpp"
#include "slrf/rng.hpp"

namespace slrf {

/// Square confusion matrix, rows = true class, columns = predicted class.
struct ConfusionMatrix {
    int class_count = 0;
    std::vector<std::int64_t> counts; // row-major, class_count^2

    std::int64_t& at(int truth, int predicted);
    std::int64_t at(int truth, int predicted) const;
    std::int64_t total() const;
};

ConfusionMatrix confusion_matrix(const std::vector<int>& predictions,
                                 const std::vector<int>& truths,
                                 int class_count);

/// Accuracy plus per-class and macro-averaged precision/recall/F1. A class
/// with no predicted (or no true) instances contributes zero for the
/// affected ratio, and macro averages run over every class in the schema.
struct Metrics {
    double accuracy = 0;
    std::vector<double> precision;
    std::vector<double> recall;
    std::vector<double> f1;
    double macro_precision = 0;
    double macro_recall = 0;
    double macro_f1 = 0;
};

Metrics metrics_from_matrix(const ConfusionMatrix& cm);

/// Support-weighted averages of the per-class scores, for reporting next to
/// the macro numbers.
struct WeightedMetrics {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

WeightedMetrics weighted_from_matrix(const ConfusionMatrix& cm);

struct Evaluation {
    ConfusionMatrix matrix;
    Metrics metrics;
};

Evaluation evaluate(const Model& model, const Dataset& dataset, const std::vector<int>& indices);

/// Fold label per sample, folds sized as evenly as possible (difference at
/// most one) with membership shuffled by `rng`.
std::vector<int> kfold_assignments(int n, int k, Rng rng);

/// Hyperparameter grids. Every combination is enumerated in row-major order
/// with the leftmost field varying slowest.
struct ForestGrid {
    std::vector<int> n_trees = {100, 200, 300};
    std::vector<std::optional<int>> max_depth = {std::nullopt, 10, 20};
    std::vector<int> min_samples_split = {2, 5};
};

struct DTGrid {
    std::vector<std::optional<int>> max_depth = {std::nullopt, 10, 20};
    std::vector<int> min_samples_split = {2, 5};
};

struct GBGrid {
    std::vector<int> n_rounds = {50, 100};
    std::vector<double> learning_rate = {0.05, 0.1};
    std::vector<int> max_depth = {2, 3};
};

struct ParamGrid {
    ForestGrid forest;
    DTGrid tree;
    GBGrid boosting;
};

/// All concrete specs of `kind` drawn from the grid, in enumeration order.
std::vector<ClassifierSpec> enumerate_grid(const ParamGrid& grid, ClassifierKind kind);

struct GridSearchCell {
    ClassifierSpec spec;
    double mean_accuracy = 0;
};

struct GridSearchResult {
    ClassifierSpec best;
    double best_accuracy = 0;
    std::vector<GridSearchCell> cells;
};

/// k-fold cross-validated accuracy for every grid cell; the winner is the
/// highest mean accuracy, ties resolved in favor of the earlier cell.
GridSearchResult grid_search(const Dataset& dataset,
                             const std::vector<int>& train_indices,
                             const ParamGrid& grid,
                             ClassifierKind kind,
                             int folds,
                             const Rng& rng);

} // namespace slrf
