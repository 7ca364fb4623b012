#include "slrf/acquisition.hpp"

#include <cmath>

#include "slrf/errors.hpp"

namespace slrf {

double confidence(const ClassProbabilities& probs) {
    if (probs.empty()) {
        throw domain_error("confidence of an empty probability vector");
    }
    double best = probs.front();
    for (double p : probs) {
        if (p > best) {
            best = p;
        }
    }
    return best;
}

double least_confidence(const ClassProbabilities& probs) {
    return 1.0 - confidence(probs);
}

IdealSelection select_ideal(const Model& model,
                            const std::vector<std::vector<double>>& synthetic_points) {
    if (synthetic_points.empty()) {
        throw domain_error("select_ideal over an empty synthetic batch");
    }
    IdealSelection best;
    for (int i = 0; i < static_cast<int>(synthetic_points.size()); ++i) {
        const double score =
            least_confidence(model.proba(synthetic_points[static_cast<std::size_t>(i)]));
        if (best.index < 0 || score > best.score) {
            best.index = i;
            best.score = score;
        }
    }
    return best;
}

NearestCandidate nearest_candidate(const std::vector<double>& ideal_point,
                                   const Dataset& dataset,
                                   const std::vector<int>& candidate_indices,
                                   const FeatureBounds& bounds) {
    if (candidate_indices.empty()) {
        throw pool_exhausted_error("no candidates left to match");
    }
    const std::vector<double> ideal_unit = normalize(ideal_point, bounds);

    NearestCandidate best;
    double best_sq = 0;
    for (int i = 0; i < static_cast<int>(candidate_indices.size()); ++i) {
        const auto row = static_cast<std::size_t>(candidate_indices[static_cast<std::size_t>(i)]);
        const std::vector<double> unit = normalize(dataset.samples[row].features, bounds);
        double sq = 0;
        for (std::size_t j = 0; j < unit.size(); ++j) {
            const double diff = unit[j] - ideal_unit[j];
            sq += diff * diff;
        }
        if (best.index < 0 || sq < best_sq) {
            best.index = i;
            best_sq = sq;
        }
    }
    best.distance = std::sqrt(best_sq);
    return best;
}

AcquisitionResult acquire(const Model& model,
                          const std::vector<std::vector<double>>& synthetic_points,
                          const Dataset& dataset,
                          const std::vector<int>& candidate_indices,
                          const FeatureBounds& bounds) {
    AcquisitionResult result;
    result.ideal = select_ideal(model, synthetic_points);
    result.ideal_point = synthetic_points[static_cast<std::size_t>(result.ideal.index)];
    result.chosen = nearest_candidate(result.ideal_point, dataset, candidate_indices, bounds);
    return result;
}

} // namespace slrf
