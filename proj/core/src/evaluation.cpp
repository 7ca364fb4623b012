#include "slrf/evaluation.hpp"

#include <numeric>

#include "slrf/errors.hpp"

namespace slrf {
namespace {

// Substream labels under the grid-search stream.
constexpr std::uint64_t kFoldStream = 1;
constexpr std::uint64_t kFitStream = 2; // index = cell * folds + fold

double safe_ratio(double numerator, double denominator) {
    return denominator > 0 ? numerator / denominator : 0.0;
}

} // namespace

std::int64_t& ConfusionMatrix::at(int truth, int predicted) {
    return counts[static_cast<std::size_t>(truth * class_count + predicted)];
}

std::int64_t ConfusionMatrix::at(int truth, int predicted) const {
    return counts[static_cast<std::size_t>(truth * class_count + predicted)];
}

std::int64_t ConfusionMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

ConfusionMatrix confusion_matrix(const std::vector<int>& predictions,
                                 const std::vector<int>& truths,
                                 int class_count) {
    if (predictions.size() != truths.size()) {
        throw domain_error("prediction and truth lists differ in length");
    }
    ConfusionMatrix cm;
    cm.class_count = class_count;
    cm.counts.assign(static_cast<std::size_t>(class_count) * static_cast<std::size_t>(class_count),
                     0);
    for (std::size_t i = 0; i < truths.size(); ++i) {
        cm.at(truths[i], predictions[i]) += 1;
    }
    return cm;
}

Metrics metrics_from_matrix(const ConfusionMatrix& cm) {
    const std::int64_t total = cm.total();
    if (total <= 0) {
        throw domain_error("metrics over an empty confusion matrix");
    }
    const int c_count = cm.class_count;

    Metrics m;
    m.precision.resize(static_cast<std::size_t>(c_count));
    m.recall.resize(static_cast<std::size_t>(c_count));
    m.f1.resize(static_cast<std::size_t>(c_count));

    std::int64_t diagonal = 0;
    for (int c = 0; c < c_count; ++c) {
        std::int64_t col_sum = 0;
        std::int64_t row_sum = 0;
        for (int other = 0; other < c_count; ++other) {
            col_sum += cm.at(other, c);
            row_sum += cm.at(c, other);
        }
        const auto hits = static_cast<double>(cm.at(c, c));
        diagonal += cm.at(c, c);

        const double precision = safe_ratio(hits, static_cast<double>(col_sum));
        const double recall = safe_ratio(hits, static_cast<double>(row_sum));
        const double f1 = safe_ratio(2.0 * precision * recall, precision + recall);
        m.precision[static_cast<std::size_t>(c)] = precision;
        m.recall[static_cast<std::size_t>(c)] = recall;
        m.f1[static_cast<std::size_t>(c)] = f1;
        m.macro_precision += precision;
        m.macro_recall += recall;
        m.macro_f1 += f1;
    }
    m.accuracy = static_cast<double>(diagonal) / static_cast<double>(total);
    m.macro_precision /= static_cast<double>(c_count);
    m.macro_recall /= static_cast<double>(c_count);
    m.macro_f1 /= static_cast<double>(c_count);
    return m;
}

WeightedMetrics weighted_from_matrix(const ConfusionMatrix& cm) {
    const std::int64_t total = cm.total();
    if (total <= 0) {
        throw domain_error("metrics over an empty confusion matrix");
    }
    const Metrics m = metrics_from_matrix(cm);

    WeightedMetrics w;
    for (int c = 0; c < cm.class_count; ++c) {
        std::int64_t row_sum = 0;
        for (int other = 0; other < cm.class_count; ++other) {
            row_sum += cm.at(c, other);
        }
        const double weight = static_cast<double>(row_sum) / static_cast<double>(total);
        w.precision += weight * m.precision[static_cast<std::size_t>(c)];
        w.recall += weight * m.recall[static_cast<std::size_t>(c)];
        w.f1 += weight * m.f1[static_cast<std::size_t>(c)];
    }
    return w;
}

Evaluation evaluate(const Model& model, const Dataset& dataset, const std::vector<int>& indices) {
    if (indices.empty()) {
        throw domain_error("evaluate over an empty index list");
    }
    std::vector<int> predictions;
    std::vector<int> truths;
    predictions.reserve(indices.size());
    truths.reserve(indices.size());
    for (int index : indices) {
        const auto& sample = dataset.samples[static_cast<std::size_t>(index)];
        predictions.push_back(model.predict(sample.features));
        truths.push_back(sample.label);
    }
    Evaluation result;
    result.matrix = confusion_matrix(predictions, truths, model.class_count());
    result.metrics = metrics_from_matrix(result.matrix);
    return result;
}

std::vector<int> kfold_assignments(int n, int k, Rng rng) {
    if (k < 2 || k > n) {
        throw config_error("fold count must lie in [2, sample count]");
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    std::vector<int> fold_of(static_cast<std::size_t>(n));
    const int base = n / k;
    const int spill = n % k;
    int position = 0;
    for (int fold = 0; fold < k; ++fold) {
        const int size = base + (fold < spill ? 1 : 0);
        for (int i = 0; i < size; ++i) {
            fold_of[static_cast<std::size_t>(order[static_cast<std::size_t>(position++)])] = fold;
        }
    }
    return fold_of;
}

std::vector<ClassifierSpec> enumerate_grid(const ParamGrid& grid, ClassifierKind kind) {
    std::vector<ClassifierSpec> cells;
    switch (kind) {
    case ClassifierKind::random_forest:
        for (int n_trees : grid.forest.n_trees) {
            for (const auto& depth : grid.forest.max_depth) {
                for (int split : grid.forest.min_samples_split) {
                    ClassifierSpec spec;
                    spec.kind = kind;
                    spec.forest.n_trees = n_trees;
                    spec.forest.max_depth = depth;
                    spec.forest.min_samples_split = split;
                    cells.push_back(spec);
                }
            }
        }
        break;
    case ClassifierKind::decision_tree:
        for (const auto& depth : grid.tree.max_depth) {
            for (int split : grid.tree.min_samples_split) {
                ClassifierSpec spec;
                spec.kind = kind;
                spec.tree.max_depth = depth;
                spec.tree.min_samples_split = split;
                cells.push_back(spec);
            }
        }
        break;
    case ClassifierKind::gradient_boosting:
        for (int rounds : grid.boosting.n_rounds) {
            for (double rate : grid.boosting.learning_rate) {
                for (int depth : grid.boosting.max_depth) {
                    ClassifierSpec spec;
                    spec.kind = kind;
                    spec.boosting.n_rounds = rounds;
                    spec.boosting.learning_rate = rate;
                    spec.boosting.max_depth = depth;
                    cells.push_back(spec);
                }
            }
        }
        break;
    }
    if (cells.empty()) {
        throw config_error("hyperparameter grid is empty");
    }
    return cells;
}

GridSearchResult grid_search(const Dataset& dataset,
                             const std::vector<int>& train_indices,
                             const ParamGrid& grid,
                             ClassifierKind kind,
                             int folds,
                             const Rng& rng) {
    const int n = static_cast<int>(train_indices.size());
    if (folds < 2 || n < folds) {
        throw config_error("grid search needs at least `folds` samples and folds >= 2");
    }
    const auto cells = enumerate_grid(grid, kind);
    const auto fold_of = kfold_assignments(n, folds, rng.derive(kFoldStream));
    const int class_count = dataset.class_count();

    GridSearchResult result;
    result.cells.reserve(cells.size());
    for (std::size_t cell = 0; cell < cells.size(); ++cell) {
        double accuracy_sum = 0;
        for (int fold = 0; fold < folds; ++fold) {
            std::vector<Sample> train;
            std::vector<const Sample*> validation;
            for (int i = 0; i < n; ++i) {
                const auto& sample =
                    dataset.samples[static_cast<std::size_t>(train_indices[static_cast<std::size_t>(i)])];
                if (fold_of[static_cast<std::size_t>(i)] == fold) {
                    validation.push_back(&sample);
                } else {
                    train.push_back(sample);
                }
            }
            const Model model = fit_classifier(
                cells[cell], train,
                rng.derive(kFitStream, cell * static_cast<std::uint64_t>(folds) +
                                           static_cast<std::uint64_t>(fold)),
                class_count);
            int hits = 0;
            for (const Sample* sample : validation) {
                if (model.predict(sample->features) == sample->label) {
                    ++hits;
                }
            }
            accuracy_sum += static_cast<double>(hits) / static_cast<double>(validation.size());
        }
        const double mean_accuracy = accuracy_sum / static_cast<double>(folds);
        result.cells.push_back({cells[cell], mean_accuracy});
        if (cell == 0 || mean_accuracy > result.best_accuracy) {
            result.best = cells[cell];
            result.best_accuracy = mean_accuracy;
        }
    }
    return result;
}

} // namespace slrf
