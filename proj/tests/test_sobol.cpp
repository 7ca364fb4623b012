#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "slrf/errors.hpp"
#include "slrf/sobol.hpp"

using namespace slrf;

namespace {

// First eight post-origin points of the 8-dimensional sequence; lower
// dimensions are prefixes. Cross-checked against an independent generator.
const double kFirstEight[8][8] = {
    {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5},
    {0.75, 0.25, 0.25, 0.25, 0.75, 0.75, 0.25, 0.75},
    {0.25, 0.75, 0.75, 0.75, 0.25, 0.25, 0.75, 0.25},
    {0.375, 0.375, 0.625, 0.875, 0.375, 0.125, 0.375, 0.875},
    {0.875, 0.875, 0.125, 0.375, 0.875, 0.625, 0.875, 0.375},
    {0.625, 0.125, 0.875, 0.625, 0.625, 0.875, 0.125, 0.125},
    {0.125, 0.625, 0.375, 0.125, 0.125, 0.375, 0.625, 0.625},
    {0.1875, 0.3125, 0.9375, 0.4375, 0.5625, 0.3125, 0.4375, 0.9375},
};

} // namespace

TEST_CASE("one-dimensional stream starts 0.5, 0.75, 0.25") {
    SobolStream stream(1);
    CHECK(stream.next_point() == std::vector<double>{0.5});
    CHECK(stream.next_point() == std::vector<double>{0.75});
    CHECK(stream.next_point() == std::vector<double>{0.25});
}

TEST_CASE("first point of any dimension is the cube center") {
    for (int d = 1; d <= SobolStream::max_dimension; ++d) {
        SobolStream stream(d);
        const auto p = stream.next_point();
        REQUIRE(static_cast<int>(p.size()) == d);
        for (double v : p) {
            CHECK(v == 0.5);
        }
    }
}

TEST_CASE("first eight points match the reference table for dimensions 1 to 8") {
    for (int d = 1; d <= 8; ++d) {
        SobolStream stream(d);
        for (int n = 0; n < 8; ++n) {
            const auto p = stream.next_point();
            for (int j = 0; j < d; ++j) {
                CHECK(p[static_cast<std::size_t>(j)] == kFirstEight[n][j]);
            }
        }
    }
}

TEST_CASE("drawing zero points leaves the stream untouched") {
    SobolStream stream(3);
    const auto empty = stream.next_points(0);
    CHECK(empty.empty());
    CHECK(stream.index() == 0);
    CHECK(stream.next_point() == std::vector<double>{0.5, 0.5, 0.5});
}

TEST_CASE("dimension bounds are enforced") {
    CHECK_THROWS_AS(SobolStream(0), config_error);
    CHECK_THROWS_AS(SobolStream(SobolStream::max_dimension + 1), config_error);
    CHECK_NOTHROW(SobolStream(SobolStream::max_dimension));
}

TEST_CASE("streams of equal dimension emit identical sequences") {
    SobolStream a(8), b(8);
    for (int n = 0; n < 500; ++n) {
        CHECK(a.next_point() == b.next_point());
    }
}

TEST_CASE("consecutive draws continue the sequence without repetition") {
    SobolStream whole(5);
    const auto all = whole.next_points(64);
    SobolStream pieces(5);
    auto first = pieces.next_points(20);
    const auto second = pieces.next_points(44);
    first.insert(first.end(), second.begin(), second.end());
    CHECK(first == all);
    CHECK(pieces.index() == 64);
}

TEST_CASE("reset rewinds to the post-origin start") {
    SobolStream stream(4);
    const auto before = stream.next_points(16);
    stream.reset();
    CHECK(stream.index() == 0);
    CHECK(stream.next_points(16) == before);
}

TEST_CASE("origin-inclusive prefixes stratify every dyadic level") {
    for (int d : {1, 2, 8, 21}) {
        SobolStream stream(d);
        const auto points = stream.next_points(1023);
        for (int k = 1; k <= 10; ++k) {
            const int bins = 1 << k;
            for (int j = 0; j < d; ++j) {
                std::vector<int> hits(static_cast<std::size_t>(bins), 0);
                ++hits[0]; // the skipped origin occupies the first bin
                for (int n = 0; n < bins - 1; ++n) {
                    const double coord = points[static_cast<std::size_t>(n)]
                                               [static_cast<std::size_t>(j)];
                    ++hits[static_cast<std::size_t>(coord * bins)];
                }
                for (int bin = 0; bin < bins; ++bin) {
                    CHECK(hits[static_cast<std::size_t>(bin)] == 1);
                }
            }
        }
    }
}

TEST_CASE("no duplicate points among the first million emissions") {
    SobolStream stream(2);
    std::unordered_set<std::uint64_t> seen;
    const int count = 1 << 20;
    seen.reserve(static_cast<std::size_t>(count) * 2);
    for (int n = 0; n < count; ++n) {
        const auto p = stream.next_point();
        const auto x = static_cast<std::uint64_t>(p[0] * 4294967296.0);
        const auto y = static_cast<std::uint64_t>(p[1] * 4294967296.0);
        CHECK(seen.insert((x << 32) | y).second);
    }
}

TEST_CASE("scaling maps the unit cube into the bounds box") {
    const FeatureBounds bounds{{{0.0, 2.0}, {10.0, 20.0}}};
    CHECK(scale_to_bounds({0.0, 0.0}, bounds) == std::vector<double>{0.0, 10.0});
    CHECK(scale_to_bounds({0.5, 0.5}, bounds) == std::vector<double>{1.0, 15.0});
    const FeatureBounds degenerate{{{3.0, 3.0}}};
    CHECK(scale_to_bounds({0.75}, degenerate) == std::vector<double>{3.0});
    CHECK_THROWS_AS(scale_to_bounds({0.5}, bounds), domain_error);
}

TEST_CASE("scale then normalize recovers the unit point") {
    const FeatureBounds bounds{{{-40.0, 125.0}, {1e-5, 9e-5}, {700.0, 701.0}}};
    SobolStream stream(3);
    for (int n = 0; n < 200; ++n) {
        const auto unit = stream.next_point();
        const auto scaled = scale_to_bounds(unit, bounds);
        const auto back = normalize(scaled, bounds);
        for (int j = 0; j < 3; ++j) {
            CHECK(back[static_cast<std::size_t>(j)] ==
                  doctest::Approx(unit[static_cast<std::size_t>(j)]).epsilon(1e-12));
        }
    }
}
