#include "slrf/gradient_boosting.hpp"

#include <algorithm>
#include <cmath>

#include "slrf/errors.hpp"

namespace slrf {
namespace {

void validate(const GBParams& params) {
    if (params.n_rounds < 0) {
        throw config_error("n_rounds must be nonnegative");
    }
    if (!(params.learning_rate > 0.0) || params.learning_rate > 1.0) {
        throw config_error("learning_rate must lie in (0, 1]");
    }
    if (params.max_depth < 1) {
        throw config_error("max_depth must be positive");
    }
}

// Softmax over one row of scores, in place.
void softmax_row(std::vector<double>& scores) {
    const double peak = *std::max_element(scores.begin(), scores.end());
    double total = 0;
    for (double& s : scores) {
        s = std::exp(s - peak);
        total += s;
    }
    for (double& s : scores) {
        s /= total;
    }
}

} // namespace

GBModel gb_fit(const std::vector<Sample>& samples,
               const GBParams& params,
               const Rng& rng,
               int class_count) {
    (void)rng; // kept for interface symmetry; boosting is deterministic
    validate(params);
    if (samples.empty()) {
        throw domain_error("gb_fit over an empty sample list");
    }

    GBModel model;
    model.params = params;
    model.class_count = class_count;

    std::vector<long long> counts(static_cast<std::size_t>(class_count), 0);
    for (const auto& s : samples) {
        ++counts[static_cast<std::size_t>(s.label)];
    }
    for (int c = 0; c < class_count; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0) {
            model.present_classes.push_back(c);
        }
    }
    const auto n = samples.size();
    const auto j_count = model.present_classes.size();

    // Position of each training label within present_classes.
    std::vector<int> label_slot(static_cast<std::size_t>(class_count), -1);
    for (std::size_t j = 0; j < j_count; ++j) {
        label_slot[static_cast<std::size_t>(model.present_classes[j])] = static_cast<int>(j);
    }

    std::vector<std::vector<double>> scores(n, std::vector<double>(j_count, 0.0));

    const auto mean_cross_entropy = [&]() {
        double total = 0;
        std::vector<double> probs;
        for (std::size_t i = 0; i < n; ++i) {
            probs = scores[i];
            softmax_row(probs);
            const auto slot =
                static_cast<std::size_t>(label_slot[static_cast<std::size_t>(samples[i].label)]);
            total += -std::log(std::max(probs[slot], 1e-300));
        }
        return total / static_cast<double>(n);
    };

    model.train_loss.push_back(mean_cross_entropy());

    std::vector<double> targets(n);
    std::vector<double> probs;
    for (int round = 0; round < params.n_rounds; ++round) {
        std::vector<std::vector<double>> round_probs(n);
        for (std::size_t i = 0; i < n; ++i) {
            round_probs[i] = scores[i];
            softmax_row(round_probs[i]);
        }

        std::vector<RegressionTree> round_trees;
        round_trees.reserve(j_count);
        for (std::size_t j = 0; j < j_count; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                const double one_hot =
                    label_slot[static_cast<std::size_t>(samples[i].label)] == static_cast<int>(j)
                        ? 1.0
                        : 0.0;
                targets[i] = one_hot - round_probs[i][j];
            }
            RegressionTree tree = grow_regression_tree(samples, targets, params.max_depth, 2);
            for (std::size_t i = 0; i < n; ++i) {
                scores[i][j] += params.learning_rate * tree.predict(samples[i].features);
            }
            round_trees.push_back(std::move(tree));
        }
        model.trees.push_back(std::move(round_trees));
        model.train_loss.push_back(mean_cross_entropy());
    }
    return model;
}

ClassProbabilities gb_proba(const GBModel& model, const std::vector<double>& x) {
    const auto j_count = model.present_classes.size();
    std::vector<double> scores(j_count, 0.0);
    for (const auto& round : model.trees) {
        for (std::size_t j = 0; j < j_count; ++j) {
            scores[j] += model.params.learning_rate * round[j].predict(x);
        }
    }
    softmax_row(scores);
    ClassProbabilities probs(static_cast<std::size_t>(model.class_count), 0.0);
    for (std::size_t j = 0; j < j_count; ++j) {
        probs[static_cast<std::size_t>(model.present_classes[j])] = scores[j];
    }
    return probs;
}

} // namespace slrf
