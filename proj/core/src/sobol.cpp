#include "slrf/sobol.hpp"

#include <bit>

#include "slrf/errors.hpp"

namespace slrf {
namespace {

/// One row of the Joe and Kuo D(6) direction-number table
/// (https://web.maths.unsw.edu.au/~fkuo/sobol/, new-joe-kuo-6): polynomial
/// degree s, encoded coefficients a, and the initial direction integers
/// m_1..m_s for dimensions 2 and up. Dimension 1 is the van der Corput
/// sequence and needs no row.
struct DirectionRow {
    int s;
    std::uint32_t a;
    std::uint32_t m[7];
};

constexpr DirectionRow kJoeKuo[] = {
    {1, 0, {1}},                        // dimension 2
    {2, 1, {1, 3}},                     // 3
    {3, 1, {1, 3, 1}},                  // 4
    {3, 2, {1, 1, 1}},                  // 5
    {4, 1, {1, 1, 3, 3}},               // 6
    {4, 4, {1, 3, 5, 13}},              // 7
    {5, 2, {1, 1, 5, 5, 17}},           // 8
    {5, 4, {1, 1, 5, 5, 5}},            // 9
    {5, 7, {1, 1, 7, 11, 19}},          // 10
    {5, 11, {1, 1, 5, 1, 1}},           // 11
    {5, 13, {1, 1, 1, 3, 11}},          // 12
    {5, 14, {1, 3, 5, 5, 31}},          // 13
    {6, 1, {1, 3, 3, 9, 7, 49}},        // 14
    {6, 13, {1, 1, 1, 15, 21, 21}},     // 15
    {6, 16, {1, 3, 1, 13, 27, 49}},     // 16
    {6, 19, {1, 1, 1, 15, 7, 5}},       // 17
    {6, 22, {1, 3, 1, 15, 13, 25}},     // 18
    {6, 25, {1, 1, 5, 5, 19, 61}},      // 19
    {7, 1, {1, 3, 7, 11, 23, 15, 103}}, // 20
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},  // 21
};

constexpr int kBits = 32;

/// v_1..v_32 for one dimension, index 0 holding v_1.
std::vector<std::uint32_t> direction_integers(int dimension_index) {
    std::vector<std::uint32_t> v(kBits);
    if (dimension_index == 0) {
        for (int k = 0; k < kBits; ++k) {
            v[static_cast<std::size_t>(k)] = 1u << (kBits - 1 - k);
        }
        return v;
    }
    const DirectionRow& row = kJoeKuo[dimension_index - 1];
    const int s = row.s;
    for (int k = 0; k < s; ++k) {
        v[static_cast<std::size_t>(k)] = row.m[k] << (kBits - 1 - k);
    }
    for (int k = s; k < kBits; ++k) {
        std::uint32_t value = v[static_cast<std::size_t>(k - s)] ^
                              (v[static_cast<std::size_t>(k - s)] >> s);
        for (int i = 1; i < s; ++i) {
            if ((row.a >> (s - 1 - i)) & 1u) {
                value ^= v[static_cast<std::size_t>(k - i)];
            }
        }
        v[static_cast<std::size_t>(k)] = value;
    }
    return v;
}

} // namespace

SobolStream::SobolStream(int dimension) : dimension_(dimension) {
    if (dimension < 1 || dimension > max_dimension) {
        throw config_error("sobol dimension must lie in [1, " +
                           std::to_string(max_dimension) + "]");
    }
    directions_.reserve(static_cast<std::size_t>(dimension));
    for (int d = 0; d < dimension; ++d) {
        directions_.push_back(direction_integers(d));
    }
    reset();
}

void SobolStream::reset() {
    emitted_ = 0;
    counter_ = 1;
    state_.assign(static_cast<std::size_t>(dimension_), 0);
    // Jump over the all-zeros point: state holds the sequence value at
    // index 1, which is v_1 (== 0.5) in every dimension.
    for (int d = 0; d < dimension_; ++d) {
        state_[static_cast<std::size_t>(d)] = directions_[static_cast<std::size_t>(d)][0];
    }
}

std::vector<double> SobolStream::next_point() {
    if (counter_ == 0) {
        throw domain_error("sobol stream exhausted");
    }
    std::vector<double> point(static_cast<std::size_t>(dimension_));
    for (int d = 0; d < dimension_; ++d) {
        point[static_cast<std::size_t>(d)] =
            static_cast<double>(state_[static_cast<std::size_t>(d)]) * 0x1.0p-32;
    }
    const int bit = std::countr_one(counter_);
    if (bit < kBits) {
        for (int d = 0; d < dimension_; ++d) {
            state_[static_cast<std::size_t>(d)] ^=
                directions_[static_cast<std::size_t>(d)][static_cast<std::size_t>(bit)];
        }
        ++counter_; // wraps to 0 only after the full period
    } else {
        counter_ = 0;
    }
    ++emitted_;
    return point;
}

std::vector<std::vector<double>> SobolStream::next_points(int count) {
    if (count < 0) {
        throw config_error("sobol point count must be nonnegative");
    }
    std::vector<std::vector<double>> points;
    points.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        points.push_back(next_point());
    }
    return points;
}

std::vector<std::vector<double>> sobol_points(SobolStream& stream, int count) {
    return stream.next_points(count);
}

std::vector<double> scale_to_bounds(const std::vector<double>& unit_point,
                                    const FeatureBounds& bounds) {
    if (static_cast<int>(unit_point.size()) != bounds.size()) {
        throw domain_error("point dimension does not match bounds");
    }
    std::vector<double> scaled(unit_point.size());
    for (std::size_t j = 0; j < unit_point.size(); ++j) {
        const auto& [lo, hi] = bounds.min_max[j];
        scaled[j] = lo + unit_point[j] * (hi - lo);
    }
    return scaled;
}

} // namespace slrf
