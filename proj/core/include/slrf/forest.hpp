#pragma once

#include <optional>
#include <vector>

#include "slrf/dataset.hpp"
#include "slrf/rng.hpp"
#include "slrf/tree.hpp"

namespace slrf {

/// Probability vector indexed over the full class set of the schema.
using ClassProbabilities = std::vector<double>;

/// argmax with lowest-index tie-break; the single prediction rule shared by
/// every classifier in this project.
int argmax_lowest(const ClassProbabilities& probs);

struct ForestParams {
    int n_trees = 100;
    int max_features = 0;         // 0 resolves to floor(sqrt(p)), min 1
    std::optional<int> max_depth; // nullopt = unlimited
    int min_samples_split = 2;
    bool bootstrap = true;
};

/// Bagged ensemble of CART trees. Immutable once fitted; safe for concurrent
/// prediction.
struct Forest {
    ForestParams params;
    int class_count = 0;
    std::vector<DecisionTree> trees;
    /// Per-tree bootstrap draw, in draw order (the full sample list when
    /// bootstrap is off). Kept for diagnostics such as out-of-bag coverage.
    std::vector<std::vector<int>> bootstrap_indices;
};

/// Grows params.n_trees trees. With bootstrap on, each tree sees |samples|
/// draws with replacement; per-tree rng substreams derive deterministically
/// from the given stream's seed, so the fit is reproducible and trees could
/// be grown in parallel without changing the result.
Forest forest_fit(const std::vector<Sample>& samples,
                  const ForestParams& params,
                  const Rng& rng,
                  int class_count);

/// Majority vote across trees, lowest class index on ties.
int forest_predict(const Forest& forest, const std::vector<double>& x);

/// Vote fractions over the full class set; classes absent from training get
/// probability zero. argmax of this vector equals forest_predict exactly.
ClassProbabilities forest_proba(const Forest& forest, const std::vector<double>& x);

} // namespace slrf
