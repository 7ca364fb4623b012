#pragma once

#include <vector>

#include "slrf/classifier.hpp"
#include "slrf/dataset.hpp"

namespace slrf {

/// Confidence of a prediction: the largest class probability.
double confidence(const ClassProbabilities& probs);

/// Least-confidence score, 1 - max probability. Higher means the model is
/// less sure about the point.
double least_confidence(const ClassProbabilities& probs);

struct IdealSelection {
    int index = -1;   // position in the synthetic batch
    double score = 0; // its least-confidence score
};

/// Score every synthetic point with the model and pick the one with the
/// highest least-confidence score. Ties go to the lowest index.
IdealSelection select_ideal(const Model& model,
                            const std::vector<std::vector<double>>& synthetic_points);

struct NearestCandidate {
    int index = -1;      // position in the candidate index list
    double distance = 0; // Euclidean distance in normalized feature space
};

/// Among the candidate pool rows, find the one closest to the ideal point.
/// Both sides are min-max normalized with the supplied bounds before the
/// Euclidean distance is taken. Ties go to the lowest position in
/// `candidate_indices`.
NearestCandidate nearest_candidate(const std::vector<double>& ideal_point,
                                   const Dataset& dataset,
                                   const std::vector<int>& candidate_indices,
                                   const FeatureBounds& bounds);

/// One acquisition step: ideal synthetic point plus the pool row chosen to
/// stand in for it.
struct AcquisitionResult {
    IdealSelection ideal;
    std::vector<double> ideal_point; // already scaled to feature bounds
    NearestCandidate chosen;
};

AcquisitionResult acquire(const Model& model,
                          const std::vector<std::vector<double>>& synthetic_points,
                          const Dataset& dataset,
                          const std::vector<int>& candidate_indices,
                          const FeatureBounds& bounds);

} // namespace slrf
