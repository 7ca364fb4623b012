#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "slrf/acquisition.hpp"
#include "slrf/errors.hpp"
#include "slrf/forest.hpp"
#include "slrf/sobol.hpp"
#include "slrf/synthetic.hpp"

using namespace slrf;

namespace {

ClassProbabilities random_simplex(Rng& rng, int c) {
    ClassProbabilities p(static_cast<std::size_t>(c));
    double sum = 0;
    for (auto& v : p) {
        v = -std::log(1.0 - rng.next_unit());
        sum += v;
    }
    for (auto& v : p) {
        v /= sum;
    }
    return p;
}

// One-feature, ten-class tree whose leaves realize chosen probability
// vectors, so selection scores can be pinned exactly.
Model scored_model() {
    const auto leaf = [](std::vector<long long> counts) {
        TreeNode node;
        node.class_counts = std::move(counts);
        return node;
    };
    DecisionTreeModel dt;
    dt.class_count = 10;
    auto& nodes = dt.tree.nodes;
    nodes.resize(5);
    nodes[0].feature_index = 0;
    nodes[0].threshold = 0.5;
    nodes[0].left = 1;
    nodes[0].right = 2;
    nodes[1] = leaf({90, 10, 0, 0, 0, 0, 0, 0, 0, 0});      // score 0.1
    nodes[2].feature_index = 0;
    nodes[2].threshold = 1.5;
    nodes[2].left = 3;
    nodes[2].right = 4;
    nodes[3] = leaf({1, 1, 1, 1, 1, 1, 1, 1, 1, 1});        // score 0.9
    nodes[4] = leaf({60, 40, 0, 0, 0, 0, 0, 0, 0, 0});      // score 0.4
    return Model(dt);
}

FeatureSchema tiny_schema(int features) {
    FeatureSchema schema;
    for (int f = 0; f < features; ++f) {
        schema.feature_names.push_back("f" + std::to_string(f));
    }
    schema.class_names = {"a", "b"};
    schema.label_column = "label";
    return schema;
}

} // namespace

TEST_CASE("confidence is the largest probability") {
    CHECK(confidence({0.7, 0.2, 0.1, 0.0}) == 0.7);
    CHECK(confidence({0.25, 0.25, 0.25, 0.25}) == 0.25);
    CHECK(confidence({0.0, 1.0, 0.0, 0.0}) == 1.0);
    CHECK_THROWS_AS(confidence({}), domain_error);
}

TEST_CASE("least confidence is its complement") {
    CHECK(least_confidence({0.7, 0.2, 0.1, 0.0}) == doctest::Approx(0.3));
    CHECK(least_confidence({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(0.75));
    CHECK(least_confidence({0.0, 1.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("scoring identities hold on random simplex vectors") {
    Rng rng(101);
    for (int trial = 0; trial < 2000; ++trial) {
        const int c = 2 + static_cast<int>(rng.next_below(7));
        const auto p = random_simplex(rng, c);
        const double conf = confidence(p);
        const double lcs = least_confidence(p);
        CHECK(conf + lcs == 1.0);
        CHECK(lcs >= 0.0);
        CHECK(lcs <= 1.0 - 1.0 / static_cast<double>(c) + 1e-12);
        const bool one_hot =
            std::count_if(p.begin(), p.end(), [](double v) { return v > 0; }) == 1;
        CHECK((lcs == 0.0) == one_hot);
    }
}

TEST_CASE("select_ideal picks the highest score, lowest index on ties") {
    const Model model = scored_model();
    const std::vector<std::vector<double>> points{{0.0}, {1.0}, {2.0}};
    const IdealSelection pick = select_ideal(model, points);
    CHECK(pick.index == 1);
    CHECK(pick.score == doctest::Approx(0.9));

    // All three points route to the same leaf: every score ties, index 0 wins.
    const std::vector<std::vector<double>> same{{2.0}, {3.0}, {4.0}};
    CHECK(select_ideal(model, same).index == 0);

    CHECK_THROWS_AS(select_ideal(model, {}), domain_error);
}

TEST_CASE("select_ideal equals a brute-force scan") {
    const Dataset ds = make_blob_dataset(120, 103);
    ForestParams params;
    params.n_trees = 15;
    const Model model(forest_fit(ds.samples, params, Rng(5), ds.class_count()));
    const FeatureBounds bounds = feature_bounds(ds.samples);

    Rng rng(107);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<double>> points;
        const int count = 1 + static_cast<int>(rng.next_below(40));
        for (int n = 0; n < count; ++n) {
            std::vector<double> unit;
            for (int f = 0; f < ds.feature_count(); ++f) {
                unit.push_back(rng.next_unit());
            }
            points.push_back(scale_to_bounds(unit, bounds));
        }
        const IdealSelection got = select_ideal(model, points);
        int want_index = 0;
        double want_score = least_confidence(model.proba(points[0]));
        for (int n = 1; n < count; ++n) {
            const double score = least_confidence(model.proba(points[static_cast<std::size_t>(n)]));
            if (score > want_score) {
                want_score = score;
                want_index = n;
            }
        }
        CHECK(got.index == want_index);
        CHECK(got.score == want_score);
    }
}

TEST_CASE("selected point is stable under permutation when scores are distinct") {
    const Model model = scored_model();
    const std::vector<std::vector<double>> points{{0.0}, {1.0}, {2.0}};
    const auto baseline = points[static_cast<std::size_t>(select_ideal(model, points).index)];
    const std::vector<std::vector<double>> shuffled{{2.0}, {0.0}, {1.0}};
    const auto permuted = shuffled[static_cast<std::size_t>(select_ideal(model, shuffled).index)];
    CHECK(baseline == permuted);
}

TEST_CASE("nearest candidate by plane geometry") {
    Dataset ds;
    ds.schema = tiny_schema(2);
    ds.samples = {{{0.0, 0.0}, 0}, {{0.4, 0.6}, 0}, {{1.0, 1.0}, 1}};
    const FeatureBounds unit{{{0.0, 1.0}, {0.0, 1.0}}};
    const NearestCandidate hit = nearest_candidate({0.5, 0.5}, ds, {0, 1, 2}, unit);
    CHECK(hit.index == 1);
    CHECK(hit.distance == doctest::Approx(std::sqrt(0.02)));

    const NearestCandidate only = nearest_candidate({0.5, 0.5}, ds, {2}, unit);
    CHECK(only.index == 0);

    CHECK_THROWS_AS(nearest_candidate({0.5, 0.5}, ds, {}, unit), pool_exhausted_error);
}

TEST_CASE("nearest candidate equals a brute-force scan") {
    Rng rng(109);
    Dataset ds;
    ds.schema = tiny_schema(4);
    for (int i = 0; i < 1000; ++i) {
        Sample s;
        for (int f = 0; f < 4; ++f) {
            s.features.push_back(rng.next_unit() * 50.0 - 10.0);
        }
        s.label = 0;
        ds.samples.push_back(std::move(s));
    }
    const FeatureBounds bounds = feature_bounds(ds.samples);

    for (int trial = 0; trial < 200; ++trial) {
        const int pool_size = 1 + static_cast<int>(rng.next_below(999));
        std::vector<int> pool = rng.pick_distinct(1000, pool_size);
        std::vector<double> ideal;
        for (int f = 0; f < 4; ++f) {
            ideal.push_back(rng.next_unit() * 50.0 - 10.0);
        }
        const NearestCandidate got = nearest_candidate(ideal, ds, pool, bounds);

        const auto norm_ideal = normalize(ideal, bounds);
        int want_index = -1;
        double want_sq = 0;
        for (std::size_t n = 0; n < pool.size(); ++n) {
            const auto cand = normalize(
                ds.samples[static_cast<std::size_t>(pool[n])].features, bounds);
            double sq = 0;
            for (std::size_t j = 0; j < cand.size(); ++j) {
                sq += (cand[j] - norm_ideal[j]) * (cand[j] - norm_ideal[j]);
            }
            if (want_index < 0 || sq < want_sq) {
                want_sq = sq;
                want_index = static_cast<int>(n);
            }
        }
        CHECK(got.index == want_index);
        CHECK(got.distance == doctest::Approx(std::sqrt(want_sq)).epsilon(1e-12));
    }
}

TEST_CASE("rescaling a feature's units does not change the chosen candidate") {
    Rng rng(113);
    Dataset ds;
    ds.schema = tiny_schema(3);
    for (int i = 0; i < 50; ++i) {
        ds.samples.push_back(
            {{rng.next_unit(), rng.next_unit() * 4.0, rng.next_unit() + 2.0}, 0});
    }
    Dataset scaled = ds;
    for (auto& s : scaled.samples) {
        s.features[0] *= 1000.0;
    }
    std::vector<int> pool(50);
    for (int i = 0; i < 50; ++i) {
        pool[static_cast<std::size_t>(i)] = i;
    }
    const FeatureBounds bounds = feature_bounds(ds.samples);
    const FeatureBounds scaled_bounds = feature_bounds(scaled.samples);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> ideal{rng.next_unit(), rng.next_unit() * 4.0,
                                  rng.next_unit() + 2.0};
        std::vector<double> scaled_ideal = ideal;
        scaled_ideal[0] *= 1000.0;
        const NearestCandidate a = nearest_candidate(ideal, ds, pool, bounds);
        const NearestCandidate b = nearest_candidate(scaled_ideal, scaled, pool, scaled_bounds);
        CHECK(a.index == b.index);
        CHECK(a.distance == doctest::Approx(b.distance).epsilon(1e-9));
    }
}

TEST_CASE("acquire composes selection and matching") {
    const Dataset ds = make_blob_dataset(80, 127);
    ForestParams params;
    params.n_trees = 10;
    const Model model(forest_fit(ds.samples, params, Rng(3), ds.class_count()));
    const FeatureBounds bounds = feature_bounds(ds.samples);

    SobolStream sobol(ds.feature_count());
    std::vector<std::vector<double>> points = sobol.next_points(100);
    for (auto& p : points) {
        p = scale_to_bounds(p, bounds);
    }
    std::vector<int> pool;
    for (int i = 0; i < 40; ++i) {
        pool.push_back(i);
    }
    const AcquisitionResult result = acquire(model, points, ds, pool, bounds);
    const IdealSelection ideal = select_ideal(model, points);
    CHECK(result.ideal.index == ideal.index);
    CHECK(result.ideal.score == ideal.score);
    CHECK(result.ideal_point == points[static_cast<std::size_t>(ideal.index)]);
    const NearestCandidate chosen =
        nearest_candidate(result.ideal_point, ds, pool, bounds);
    CHECK(result.chosen.index == chosen.index);
    CHECK(result.chosen.distance == chosen.distance);
}
