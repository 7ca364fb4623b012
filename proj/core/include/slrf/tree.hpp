#pragma once

#include <optional>
#include <vector>

#include "slrf/dataset.hpp"
#include "slrf/rng.hpp"

namespace slrf {

/// Node of a binary CART tree, stored in a flat vector. Internal nodes route
/// x left iff x[feature_index] <= threshold. Classification leaves carry the
/// class counts of the training samples that reached them; regression leaves
/// carry the mean target.
struct TreeNode {
    int feature_index = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<long long> class_counts; // classification leaves
    double value = 0.0;                  // regression leaves

    bool is_leaf() const { return feature_index < 0; }
};

struct DecisionTree {
    std::vector<TreeNode> nodes; // root at index 0

    /// Index of the leaf x is routed to.
    int leaf_for(const std::vector<double>& x) const;

    /// Majority class of the reached leaf, lowest class index on ties.
    int predict(const std::vector<double>& x) const;

    int depth() const;
};

struct RegressionTree {
    std::vector<TreeNode> nodes;

    double predict(const std::vector<double>& x) const;
};

struct TreeParams {
    int max_features = 0;              // 0 resolves to floor(sqrt(p)), min 1
    std::optional<int> max_depth;      // nullopt = unlimited; 0 = root leaf
    int min_samples_split = 2;
};

struct Split {
    int feature_index = -1;
    double threshold = 0.0;
    double weighted_child_impurity = 0.0;
};

/// Gini impurity 1 - sum((count_c / total)^2). Total must be positive.
double gini(const std::vector<long long>& class_counts);

/// Best Gini split over the given feature subset. Candidate thresholds are
/// midpoints between consecutive distinct sorted values. Returns nullopt when
/// the node is pure or no split reduces impurity. Ties break on lowest
/// feature index, then lowest threshold.
std::optional<Split> best_split(const std::vector<Sample>& samples,
                                const std::vector<int>& feature_subset,
                                int class_count);

/// Grows a CART classification tree. A fresh random feature subset of size
/// max_features is drawn at every internal node. Growth stops on purity, the
/// depth limit, min_samples_split, or when no split reduces impurity.
DecisionTree grow_tree(const std::vector<Sample>& samples,
                       const TreeParams& params,
                       Rng rng,
                       int class_count);

/// Least-squares regression tree over (samples[i].features, targets[i]);
/// splits minimize the summed child squared error, all features considered.
RegressionTree grow_regression_tree(const std::vector<Sample>& samples,
                                    const std::vector<double>& targets,
                                    std::optional<int> max_depth,
                                    int min_samples_split);

} // namespace slrf
