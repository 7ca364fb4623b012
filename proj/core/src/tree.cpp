#include "slrf/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "slrf/errors.hpp"

namespace slrf {
namespace {

// Any threshold in [lo, hi) routes identically; the midpoint is the
// canonical choice unless rounding pushes it onto hi.
double midpoint(double lo, double hi) {
    const double mid = lo + (hi - lo) / 2.0;
    return mid < hi ? mid : lo;
}

int resolve_max_features(int requested, int p) {
    int k = requested;
    if (k == 0) {
        k = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(p)))));
    }
    if (k < 1 || k > p) {
        throw config_error("max_features must lie in [1, feature count]");
    }
    return k;
}

std::vector<long long> count_labels(const std::vector<Sample>& samples,
                                    const std::vector<int>& node_samples,
                                    int class_count) {
    std::vector<long long> counts(static_cast<std::size_t>(class_count), 0);
    for (int i : node_samples) {
        ++counts[static_cast<std::size_t>(samples[static_cast<std::size_t>(i)].label)];
    }
    return counts;
}

bool is_pure(const std::vector<long long>& counts) {
    int nonzero = 0;
    for (long long c : counts) {
        if (c > 0) {
            ++nonzero;
        }
    }
    return nonzero <= 1;
}

struct SplitCandidate {
    double impurity = std::numeric_limits<double>::infinity();
    int feature_index = -1;
    double threshold = 0;

    bool better_than(const SplitCandidate& other) const {
        if (impurity != other.impurity) {
            return impurity < other.impurity;
        }
        if (feature_index != other.feature_index) {
            return feature_index < other.feature_index;
        }
        return threshold < other.threshold;
    }
};

std::optional<Split> best_split_indexed(const std::vector<Sample>& samples,
                                        const std::vector<int>& node_samples,
                                        const std::vector<int>& feature_subset,
                                        const std::vector<long long>& node_counts,
                                        int class_count) {
    const auto n = static_cast<long long>(node_samples.size());
    if (n < 2) {
        return std::nullopt;
    }
    const double parent = gini(node_counts);

    SplitCandidate best;
    std::vector<std::pair<double, int>> ordered; // (value, label)
    ordered.reserve(node_samples.size());
    std::vector<long long> left(static_cast<std::size_t>(class_count));
    std::vector<long long> right(static_cast<std::size_t>(class_count));

    for (int f : feature_subset) {
        ordered.clear();
        for (int i : node_samples) {
            const auto& s = samples[static_cast<std::size_t>(i)];
            ordered.emplace_back(s.features[static_cast<std::size_t>(f)], s.label);
        }
        std::sort(ordered.begin(), ordered.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        std::fill(left.begin(), left.end(), 0);
        right = node_counts;
        for (long long i = 0; i + 1 < n; ++i) {
            const auto label = static_cast<std::size_t>(ordered[static_cast<std::size_t>(i)].second);
            ++left[label];
            --right[label];
            const double lo = ordered[static_cast<std::size_t>(i)].first;
            const double hi = ordered[static_cast<std::size_t>(i + 1)].first;
            if (lo == hi) {
                continue;
            }
            const auto n_left = i + 1;
            const auto n_right = n - n_left;
            const double weighted = (static_cast<double>(n_left) * gini(left) +
                                     static_cast<double>(n_right) * gini(right)) /
                                    static_cast<double>(n);
            const SplitCandidate candidate{weighted, f, midpoint(lo, hi)};
            if (candidate.better_than(best)) {
                best = candidate;
            }
        }
    }

    if (best.feature_index < 0 || !(best.impurity < parent)) {
        return std::nullopt;
    }
    return Split{best.feature_index, best.threshold, best.impurity};
}

} // namespace

double gini(const std::vector<long long>& class_counts) {
    long long total = 0;
    for (long long c : class_counts) {
        total += c;
    }
    if (total <= 0) {
        throw domain_error("gini over zero total count");
    }
    double sum_sq = 0;
    for (long long c : class_counts) {
        const double frac = static_cast<double>(c) / static_cast<double>(total);
        sum_sq += frac * frac;
    }
    return 1.0 - sum_sq;
}

std::optional<Split> best_split(const std::vector<Sample>& samples,
                                const std::vector<int>& feature_subset,
                                int class_count) {
    std::vector<int> all(samples.size());
    std::iota(all.begin(), all.end(), 0);
    const auto counts = count_labels(samples, all, class_count);
    return best_split_indexed(samples, all, feature_subset, counts, class_count);
}

int DecisionTree::leaf_for(const std::vector<double>& x) const {
    int node = 0;
    while (!nodes[static_cast<std::size_t>(node)].is_leaf()) {
        const auto& n = nodes[static_cast<std::size_t>(node)];
        node = x[static_cast<std::size_t>(n.feature_index)] <= n.threshold ? n.left : n.right;
    }
    return node;
}

int DecisionTree::predict(const std::vector<double>& x) const {
    const auto& counts = nodes[static_cast<std::size_t>(leaf_for(x))].class_counts;
    int best = 0;
    for (int c = 1; c < static_cast<int>(counts.size()); ++c) {
        if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)]) {
            best = c;
        }
    }
    return best;
}

int DecisionTree::depth() const {
    std::function<int(int)> walk = [&](int node) -> int {
        const auto& n = nodes[static_cast<std::size_t>(node)];
        if (n.is_leaf()) {
            return 0;
        }
        return 1 + std::max(walk(n.left), walk(n.right));
    };
    return nodes.empty() ? 0 : walk(0);
}

double RegressionTree::predict(const std::vector<double>& x) const {
    int node = 0;
    while (!nodes[static_cast<std::size_t>(node)].is_leaf()) {
        const auto& n = nodes[static_cast<std::size_t>(node)];
        node = x[static_cast<std::size_t>(n.feature_index)] <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(node)].value;
}

DecisionTree grow_tree(const std::vector<Sample>& samples,
                       const TreeParams& params,
                       Rng rng,
                       int class_count) {
    if (samples.empty()) {
        throw domain_error("grow_tree over an empty sample list");
    }
    if (params.max_depth && *params.max_depth < 0) {
        throw config_error("max_depth must be nonnegative");
    }
    if (params.min_samples_split < 2) {
        throw config_error("min_samples_split must be at least 2");
    }
    const int p = static_cast<int>(samples.front().features.size());
    const int k = resolve_max_features(params.max_features, p);

    DecisionTree tree;

    std::function<int(std::vector<int>&, int)> build = [&](std::vector<int>& node_samples,
                                                           int depth) -> int {
        auto counts = count_labels(samples, node_samples, class_count);
        const int node_index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        const bool depth_capped = params.max_depth && depth >= *params.max_depth;
        const bool too_small =
            static_cast<int>(node_samples.size()) < params.min_samples_split;

        std::optional<Split> split;
        if (!depth_capped && !too_small && !is_pure(counts)) {
            const auto subset = rng.pick_distinct(p, k);
            split = best_split_indexed(samples, node_samples, subset, counts, class_count);
        }

        if (!split) {
            tree.nodes[static_cast<std::size_t>(node_index)].class_counts = std::move(counts);
            return node_index;
        }

        std::vector<int> left_samples;
        std::vector<int> right_samples;
        for (int i : node_samples) {
            const auto& s = samples[static_cast<std::size_t>(i)];
            if (s.features[static_cast<std::size_t>(split->feature_index)] <= split->threshold) {
                left_samples.push_back(i);
            } else {
                right_samples.push_back(i);
            }
        }
        node_samples.clear();
        node_samples.shrink_to_fit();

        const int left = build(left_samples, depth + 1);
        const int right = build(right_samples, depth + 1);
        auto& node = tree.nodes[static_cast<std::size_t>(node_index)];
        node.feature_index = split->feature_index;
        node.threshold = split->threshold;
        node.left = left;
        node.right = right;
        return node_index;
    };

    std::vector<int> all(samples.size());
    std::iota(all.begin(), all.end(), 0);
    build(all, 0);
    return tree;
}

RegressionTree grow_regression_tree(const std::vector<Sample>& samples,
                                    const std::vector<double>& targets,
                                    std::optional<int> max_depth,
                                    int min_samples_split) {
    if (samples.empty()) {
        throw domain_error("grow_regression_tree over an empty sample list");
    }
    if (samples.size() != targets.size()) {
        throw domain_error("grow_regression_tree: one target per sample required");
    }
    if (max_depth && *max_depth < 0) {
        throw config_error("max_depth must be nonnegative");
    }
    if (min_samples_split < 2) {
        throw config_error("min_samples_split must be at least 2");
    }
    const int p = static_cast<int>(samples.front().features.size());

    RegressionTree tree;

    // Sum of squared deviations from the mean, via sums and square sums.
    const auto sse = [](double sum, double sum_sq, long long n) {
        return sum_sq - sum * sum / static_cast<double>(n);
    };

    std::function<int(std::vector<int>&, int)> build = [&](std::vector<int>& node_samples,
                                                           int depth) -> int {
        const auto n = static_cast<long long>(node_samples.size());
        double sum = 0;
        double sum_sq = 0;
        for (int i : node_samples) {
            sum += targets[static_cast<std::size_t>(i)];
            sum_sq += targets[static_cast<std::size_t>(i)] * targets[static_cast<std::size_t>(i)];
        }
        const double mean = sum / static_cast<double>(n);

        const int node_index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        const bool depth_capped = max_depth && depth >= *max_depth;
        const bool too_small = n < min_samples_split;
        const double node_sse = sse(sum, sum_sq, n);

        SplitCandidate best;
        if (!depth_capped && !too_small && node_sse > 0) {
            std::vector<std::pair<double, double>> ordered; // (value, target)
            for (int f = 0; f < p; ++f) {
                ordered.clear();
                for (int i : node_samples) {
                    ordered.emplace_back(
                        samples[static_cast<std::size_t>(i)].features[static_cast<std::size_t>(f)],
                        targets[static_cast<std::size_t>(i)]);
                }
                std::sort(ordered.begin(), ordered.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                double left_sum = 0;
                double left_sq = 0;
                for (long long i = 0; i + 1 < n; ++i) {
                    const double y = ordered[static_cast<std::size_t>(i)].second;
                    left_sum += y;
                    left_sq += y * y;
                    const double lo = ordered[static_cast<std::size_t>(i)].first;
                    const double hi = ordered[static_cast<std::size_t>(i + 1)].first;
                    if (lo == hi) {
                        continue;
                    }
                    const double child_sse = sse(left_sum, left_sq, i + 1) +
                                             sse(sum - left_sum, sum_sq - left_sq, n - i - 1);
                    const SplitCandidate candidate{child_sse, f, midpoint(lo, hi)};
                    if (candidate.better_than(best)) {
                        best = candidate;
                    }
                }
            }
        }

        if (best.feature_index < 0 || !(best.impurity < node_sse)) {
            tree.nodes[static_cast<std::size_t>(node_index)].value = mean;
            return node_index;
        }

        std::vector<int> left_samples;
        std::vector<int> right_samples;
        for (int i : node_samples) {
            const auto& s = samples[static_cast<std::size_t>(i)];
            if (s.features[static_cast<std::size_t>(best.feature_index)] <= best.threshold) {
                left_samples.push_back(i);
            } else {
                right_samples.push_back(i);
            }
        }
        node_samples.clear();
        node_samples.shrink_to_fit();

        const int left = build(left_samples, depth + 1);
        const int right = build(right_samples, depth + 1);
        auto& node = tree.nodes[static_cast<std::size_t>(node_index)];
        node.feature_index = best.feature_index;
        node.threshold = best.threshold;
        node.left = left;
        node.right = right;
        return node_index;
    };

    std::vector<int> all(samples.size());
    std::iota(all.begin(), all.end(), 0);
    build(all, 0);
    return tree;
}

} // namespace slrf
