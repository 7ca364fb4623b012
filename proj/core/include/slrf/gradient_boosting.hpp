#pragma once

#include <vector>

#include "slrf/dataset.hpp"
#include "slrf/forest.hpp"
#include "slrf/rng.hpp"
#include "slrf/tree.hpp"

namespace slrf {

struct GBParams {
    int n_rounds = 100;
    double learning_rate = 0.1;
    int max_depth = 3;
};

/// Multiclass gradient-boosted trees with a softmax link: one additive score
/// function per class present in the training data, built from regression
/// trees fit to pseudo-residuals (one-hot label minus current softmax
/// probability), each scaled by the learning rate.
struct GBModel {
    GBParams params;
    int class_count = 0;              // full schema class set
    std::vector<int> present_classes; // ascending class indices seen in training
    /// trees[round][j] boosts present_classes[j].
    std::vector<std::vector<RegressionTree>> trees;
    /// Mean training cross-entropy after each round; entry 0 is the loss of
    /// the zero-score model. Diagnostic only, not serialized.
    std::vector<double> train_loss;
};

GBModel gb_fit(const std::vector<Sample>& samples,
               const GBParams& params,
               const Rng& rng,
               int class_count);

/// Softmax of the class scores over the full schema class set; classes absent
/// from training get probability zero.
ClassProbabilities gb_proba(const GBModel& model, const std::vector<double>& x);

} // namespace slrf
