#pragma once

#include <cstdint>

#include "slrf/dataset.hpp"

namespace slrf {

/// Synthetic stand-in for the melt-pool table: four imbalanced Gaussian
/// blobs in the eight-feature space of FeatureSchema::melt_pool(), with
/// class overlap tuned so model accuracy climbs visibly with training size.
Dataset make_blob_dataset(int n_samples, std::uint64_t seed);

} // namespace slrf
