#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "slrf/rng.hpp"
#include "slrf/schema.hpp"

namespace slrf {

/// One labeled observation: raw-unit feature vector plus a class index.
struct Sample {
    std::vector<double> features;
    int label = -1;
};

struct Dataset {
    FeatureSchema schema;
    std::vector<Sample> samples;

    int size() const { return static_cast<int>(samples.size()); }
    int feature_count() const { return schema.feature_count(); }
    int class_count() const { return schema.class_count(); }
};

/// Disjoint index sets over a source dataset. The test set is fixed at
/// creation; the sequential loop moves indices from candidate to initial.
struct Partition {
    std::vector<int> initial;
    std::vector<int> candidate;
    std::vector<int> test;
};

struct SplitSizes {
    int n_initial = 25;
    int n_candidate = 460;
    int n_test = 200;
};

/// Per-feature (min, max) in raw units. Frozen once per run; used for both
/// scaling quasi-random points into feature space and for distance
/// normalization.
struct FeatureBounds {
    std::vector<std::pair<double, double>> min_max;

    int size() const { return static_cast<int>(min_max.size()); }
};

/// Reads a CSV file (UTF-8, header row) whose header contains every schema
/// feature column plus the schema's label column, in any order; extra columns
/// are ignored. Errors carry 1-based file line numbers.
Dataset load_dataset(const std::filesystem::path& path, const FeatureSchema& schema);

/// Uniform random assignment without replacement, driven solely by rng.
/// Sizes must sum to the dataset size.
Partition partition(const Dataset& dataset, const SplitSizes& sizes, Rng& rng);

/// Exact per-feature min/max over a non-empty sample list.
FeatureBounds feature_bounds(const std::vector<Sample>& samples);

/// Bounds over the samples selected by `indices`.
FeatureBounds feature_bounds(const Dataset& dataset, const std::vector<int>& indices);

/// Min-max map into the unit cube. Coordinates outside the bounds clamp to
/// [0, 1]; a degenerate feature (min == max) maps to 0.5 so it contributes
/// nothing to pairwise distances.
std::vector<double> normalize(const std::vector<double>& x, const FeatureBounds& bounds);

/// Copies of the samples selected by `indices`, in index order.
std::vector<Sample> gather(const Dataset& dataset, const std::vector<int>& indices);

/// Writes the dataset back out in the schema's CSV layout.
void write_csv(const Dataset& dataset, const std::filesystem::path& path);

} // namespace slrf
