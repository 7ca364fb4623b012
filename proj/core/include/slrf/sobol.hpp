#pragma once

#include <cstdint>
#include <vector>

#include "slrf/dataset.hpp"

namespace slrf {

/// Gray-code Sobol generator over the unit hypercube. Direction numbers come
/// from the Joe and Kuo D(6) table, so up to 21 dimensions are supported.
///
/// The stream skips the all-zeros point: the first point handed out is
/// (0.5, 0.5, ...). Successive draws continue the same low-discrepancy
/// sequence, so callers that need fresh points across rounds just keep
/// drawing from one stream.
class SobolStream {
public:
    static constexpr int max_dimension = 21;

    explicit SobolStream(int dimension);

    /// Next point, 2^-32 grid, each coordinate in (0, 1).
    std::vector<double> next_point();

    std::vector<std::vector<double>> next_points(int count);

    /// Rewind to the post-origin start of the sequence.
    void reset();

    /// Count of points handed out since construction or reset().
    std::uint64_t index() const { return emitted_; }

    int dimension() const { return dimension_; }

private:
    int dimension_ = 0;
    std::uint64_t emitted_ = 0;
    std::uint32_t counter_ = 0; // Gray-code step counter, already past origin
    std::vector<std::uint32_t> state_;             // current X per dimension
    std::vector<std::vector<std::uint32_t>> directions_; // [dim][bit]
};

/// Draw `count` points as rows.
std::vector<std::vector<double>> sobol_points(SobolStream& stream, int count);

/// Map a unit-cube point into the axis-aligned box given by per-feature
/// bounds. Degenerate bounds (min == max) pin the coordinate to that value.
std::vector<double> scale_to_bounds(const std::vector<double>& unit_point,
                                    const FeatureBounds& bounds);

} // namespace slrf
