#include "slrf/forest.hpp"

#include <numeric>

#include "slrf/errors.hpp"

namespace slrf {
namespace {

// Tree-local substream labels under the fit stream.
constexpr std::uint64_t kBootstrapStream = 1;
constexpr std::uint64_t kGrowthStream = 2;

} // namespace

int argmax_lowest(const ClassProbabilities& probs) {
    if (probs.empty()) {
        throw domain_error("argmax over an empty probability vector");
    }
    int best = 0;
    for (int c = 1; c < static_cast<int>(probs.size()); ++c) {
        if (probs[static_cast<std::size_t>(c)] > probs[static_cast<std::size_t>(best)]) {
            best = c;
        }
    }
    return best;
}

Forest forest_fit(const std::vector<Sample>& samples,
                  const ForestParams& params,
                  const Rng& rng,
                  int class_count) {
    if (samples.empty()) {
        throw domain_error("forest_fit over an empty sample list");
    }
    if (params.n_trees < 1) {
        throw config_error("n_trees must be positive");
    }

    Forest forest;
    forest.params = params;
    forest.class_count = class_count;
    forest.trees.reserve(static_cast<std::size_t>(params.n_trees));
    forest.bootstrap_indices.reserve(static_cast<std::size_t>(params.n_trees));

    TreeParams tree_params;
    tree_params.max_features = params.max_features;
    tree_params.max_depth = params.max_depth;
    tree_params.min_samples_split = params.min_samples_split;

    const auto n = static_cast<std::uint32_t>(samples.size());
    for (int t = 0; t < params.n_trees; ++t) {
        const Rng tree_rng = rng.derive(kBootstrapStream, static_cast<std::uint64_t>(t));
        std::vector<int> draw;
        if (params.bootstrap) {
            Rng sampler = tree_rng;
            draw.reserve(samples.size());
            for (std::uint32_t i = 0; i < n; ++i) {
                draw.push_back(static_cast<int>(sampler.next_below(n)));
            }
        } else {
            draw.resize(samples.size());
            std::iota(draw.begin(), draw.end(), 0);
        }

        std::vector<Sample> bag;
        bag.reserve(draw.size());
        for (int i : draw) {
            bag.push_back(samples[static_cast<std::size_t>(i)]);
        }

        forest.trees.push_back(grow_tree(
            bag, tree_params, rng.derive(kGrowthStream, static_cast<std::uint64_t>(t)),
            class_count));
        forest.bootstrap_indices.push_back(std::move(draw));
    }
    return forest;
}

int forest_predict(const Forest& forest, const std::vector<double>& x) {
    return argmax_lowest(forest_proba(forest, x));
}

ClassProbabilities forest_proba(const Forest& forest, const std::vector<double>& x) {
    std::vector<int> votes(static_cast<std::size_t>(forest.class_count), 0);
    for (const auto& tree : forest.trees) {
        ++votes[static_cast<std::size_t>(tree.predict(x))];
    }
    ClassProbabilities probs(static_cast<std::size_t>(forest.class_count), 0.0);
    const auto m = static_cast<double>(forest.trees.size());
    for (std::size_t c = 0; c < probs.size(); ++c) {
        probs[c] = static_cast<double>(votes[c]) / m;
    }
    return probs;
}

} // namespace slrf
