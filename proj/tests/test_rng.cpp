#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "slrf/rng.hpp"

using slrf::Rng;

TEST_CASE("same seed yields the same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("different seeds diverge") {
    Rng a(1), b(2);
    int equal = 0;
    for (int i = 0; i < 64; ++i) {
        equal += a.next_u64() == b.next_u64();
    }
    CHECK(equal < 4);
}

TEST_CASE("next_below stays in range and hits every residue") {
    Rng rng(7);
    std::set<std::uint32_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto v = rng.next_below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
    CHECK(Rng(1).next_below(1) == 0);
}

TEST_CASE("next_unit lies in [0, 1)") {
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("next_normal is finite and roughly centered") {
    Rng rng(11);
    double sum = 0;
    for (int i = 0; i < 5000; ++i) {
        const double z = rng.next_normal();
        REQUIRE(std::isfinite(z));
        sum += z;
    }
    CHECK(std::abs(sum / 5000.0) < 0.1);
}

TEST_CASE("derive does not depend on parent stream position") {
    Rng parent(123);
    const Rng child_before = parent.derive(3, 5);
    parent.next_u64();
    parent.next_u64();
    Rng child_after = parent.derive(3, 5);
    Rng reference = child_before;
    for (int i = 0; i < 20; ++i) {
        CHECK(child_after.next_u64() == reference.next_u64());
    }
}

TEST_CASE("derive separates streams and indices") {
    const Rng root(99);
    CHECK(Rng(root.derive(1, 0).seed()).next_u64() != Rng(root.derive(2, 0).seed()).next_u64());
    CHECK(Rng(root.derive(1, 0).seed()).next_u64() != Rng(root.derive(1, 1).seed()).next_u64());
}

TEST_CASE("shuffle permutes") {
    Rng rng(5);
    std::vector<int> values(50);
    for (int i = 0; i < 50; ++i) {
        values[static_cast<std::size_t>(i)] = i;
    }
    auto shuffled = values;
    rng.shuffle(shuffled);
    CHECK(shuffled != values);
    auto sorted = shuffled;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == values);
}

TEST_CASE("pick_distinct returns k distinct values in range") {
    Rng rng(21);
    const auto picked = rng.pick_distinct(100, 30);
    REQUIRE(picked.size() == 30);
    std::set<int> unique(picked.begin(), picked.end());
    CHECK(unique.size() == 30);
    for (int v : picked) {
        CHECK(v >= 0);
        CHECK(v < 100);
    }
    Rng all(22);
    auto everything = all.pick_distinct(10, 10);
    std::sort(everything.begin(), everything.end());
    for (int i = 0; i < 10; ++i) {
        CHECK(everything[static_cast<std::size_t>(i)] == i);
    }
}
