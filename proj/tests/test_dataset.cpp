#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "slrf/dataset.hpp"
#include "slrf/errors.hpp"
#include "slrf/schema.hpp"
#include "slrf/synthetic.hpp"

namespace fs = std::filesystem;
using namespace slrf;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path dir = fs::temp_directory_path() / "slrf_dataset_tests";
    fs::create_directories(dir);
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

const char* kHeader =
    "power,velocity,density,specific_heat,thermal_conductivity,"
    "melting_temperature,beam_diameter,absorption_coefficient,melt_pool_class\n";

std::string row(const std::string& label) {
    return "200,1.0,7900,500,20,1650,8e-05,0.5," + label + "\n";
}

} // namespace

TEST_CASE("melt pool schema lists the eight features and four classes") {
    const FeatureSchema schema = FeatureSchema::melt_pool();
    REQUIRE(schema.feature_count() == 8);
    CHECK(schema.feature_names.front() == "power");
    CHECK(schema.feature_names.back() == "absorption_coefficient");
    REQUIRE(schema.class_count() == 4);
    CHECK(schema.class_names ==
          std::vector<std::string>{"lack_of_fusion", "balling", "desirable", "keyhole"});
    CHECK(schema.class_index("keyhole") == 3);
    CHECK(schema.class_index("porosity") == -1);
    CHECK_NOTHROW(schema.validate());
}

TEST_CASE("schema validation rejects duplicates") {
    FeatureSchema schema = FeatureSchema::melt_pool();
    schema.feature_names[1] = "power";
    CHECK_THROWS_AS(schema.validate(), schema_error);
}

TEST_CASE("header-only file loads as an empty dataset") {
    const auto path = write_temp("empty.csv", kHeader);
    const Dataset ds = load_dataset(path, FeatureSchema::melt_pool());
    CHECK(ds.size() == 0);
}

TEST_CASE("unknown label is reported with its line number") {
    const auto path = write_temp("bad_label.csv",
                                 std::string(kHeader) + row("keyhole") + row("porosity"));
    try {
        load_dataset(path, FeatureSchema::melt_pool());
        FAIL("expected label_error");
    } catch (const label_error& e) {
        CHECK(std::string(e.what()).find("porosity") != std::string::npos);
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("missing column is reported by name") {
    const auto path = write_temp("missing_col.csv",
                                 "power,velocity,melt_pool_class\n200,1.0,keyhole\n");
    try {
        load_dataset(path, FeatureSchema::melt_pool());
        FAIL("expected schema_error");
    } catch (const schema_error& e) {
        CHECK(std::string(e.what()).find("density") != std::string::npos);
    }
}

TEST_CASE("non-numeric cell is reported with its line number") {
    const auto path = write_temp(
        "bad_cell.csv",
        std::string(kHeader) + row("keyhole") +
            "200,fast,7900,500,20,1650,8e-05,0.5,keyhole\n");
    try {
        load_dataset(path, FeatureSchema::melt_pool());
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("extra columns and permuted order are accepted") {
    const auto path = write_temp(
        "permuted.csv",
        "melt_pool_class,absorption_coefficient,beam_diameter,melting_temperature,"
        "thermal_conductivity,specific_heat,density,velocity,power,note\n"
        "balling,0.5,8e-05,1650,20,500,7900,1.25,210,ignored\n");
    const Dataset ds = load_dataset(path, FeatureSchema::melt_pool());
    REQUIRE(ds.size() == 1);
    CHECK(ds.samples[0].label == 1);
    CHECK(ds.samples[0].features[0] == doctest::Approx(210.0));
    CHECK(ds.samples[0].features[1] == doctest::Approx(1.25));
}

TEST_CASE("crlf line endings load cleanly") {
    const auto path = write_temp(
        "crlf.csv",
        "power,velocity,density,specific_heat,thermal_conductivity,"
        "melting_temperature,beam_diameter,absorption_coefficient,melt_pool_class\r\n"
        "200,1.0,7900,500,20,1650,8e-05,0.5,desirable\r\n");
    const Dataset ds = load_dataset(path, FeatureSchema::melt_pool());
    REQUIRE(ds.size() == 1);
    CHECK(ds.samples[0].label == 2);
}

TEST_CASE("write then load round-trips values exactly") {
    const Dataset original = make_blob_dataset(685, 8685);
    REQUIRE(original.size() == 685);
    const fs::path path = write_temp("roundtrip.csv", "");
    write_csv(original, path);
    const Dataset loaded = load_dataset(path, original.schema);
    REQUIRE(loaded.size() == original.size());
    for (int i = 0; i < original.size(); ++i) {
        const auto& a = original.samples[static_cast<std::size_t>(i)];
        const auto& b = loaded.samples[static_cast<std::size_t>(i)];
        CHECK(a.label == b.label);
        for (std::size_t j = 0; j < a.features.size(); ++j) {
            CHECK(a.features[j] == b.features[j]);
        }
    }
}

TEST_CASE("partition produces the requested sizes, disjoint and exhaustive") {
    const Dataset ds = make_blob_dataset(685, 1);
    Rng rng(77);
    const Partition part = partition(ds, SplitSizes{25, 460, 200}, rng);
    REQUIRE(part.initial.size() == 25);
    REQUIRE(part.candidate.size() == 460);
    REQUIRE(part.test.size() == 200);
    std::set<int> all;
    for (const auto* set : {&part.initial, &part.candidate, &part.test}) {
        for (int i : *set) {
            CHECK(i >= 0);
            CHECK(i < 685);
            CHECK(all.insert(i).second);
        }
    }
    CHECK(all.size() == 685);
}

TEST_CASE("partition is driven only by the rng seed") {
    const Dataset ds = make_blob_dataset(150, 2);
    Rng a(5), b(5), c(6);
    const Partition pa = partition(ds, SplitSizes{10, 100, 40}, a);
    const Partition pb = partition(ds, SplitSizes{10, 100, 40}, b);
    const Partition pc = partition(ds, SplitSizes{10, 100, 40}, c);
    CHECK(pa.initial == pb.initial);
    CHECK(pa.candidate == pb.candidate);
    CHECK(pa.test == pb.test);
    CHECK(pa.initial != pc.initial);
}

TEST_CASE("degenerate split sends everything to test") {
    const Dataset ds = make_blob_dataset(60, 3);
    Rng rng(1);
    const Partition part = partition(ds, SplitSizes{0, 0, 60}, rng);
    CHECK(part.initial.empty());
    CHECK(part.candidate.empty());
    CHECK(part.test.size() == 60);
}

TEST_CASE("sizes that do not add up are rejected") {
    const Dataset ds = make_blob_dataset(60, 3);
    Rng rng(1);
    CHECK_THROWS_AS(partition(ds, SplitSizes{10, 10, 10}, rng), config_error);
}

TEST_CASE("feature bounds are exact per-feature min and max") {
    std::vector<Sample> samples{{{0.0, 10.0}, 0}, {{5.0, 2.0}, 1}};
    const FeatureBounds bounds = feature_bounds(samples);
    REQUIRE(bounds.size() == 2);
    CHECK(bounds.min_max[0] == std::pair<double, double>{0.0, 5.0});
    CHECK(bounds.min_max[1] == std::pair<double, double>{2.0, 10.0});

    const FeatureBounds single = feature_bounds({{{3.0, 4.0}, 0}});
    CHECK(single.min_max[0] == std::pair<double, double>{3.0, 3.0});
    CHECK(single.min_max[1] == std::pair<double, double>{4.0, 4.0});

    CHECK_THROWS_AS(feature_bounds(std::vector<Sample>{}), domain_error);
}

TEST_CASE("bounds over initial plus candidate contain every candidate coordinate") {
    const Dataset ds = make_blob_dataset(685, 4);
    Rng rng(12);
    const Partition part = partition(ds, SplitSizes{25, 460, 200}, rng);
    std::vector<int> pool_union = part.initial;
    pool_union.insert(pool_union.end(), part.candidate.begin(), part.candidate.end());
    const FeatureBounds bounds = feature_bounds(ds, pool_union);
    for (int idx : part.candidate) {
        const auto& x = ds.samples[static_cast<std::size_t>(idx)].features;
        for (int j = 0; j < bounds.size(); ++j) {
            const auto [lo, hi] = bounds.min_max[static_cast<std::size_t>(j)];
            CHECK(x[static_cast<std::size_t>(j)] >= lo);
            CHECK(x[static_cast<std::size_t>(j)] <= hi);
        }
    }
}

TEST_CASE("normalize maps endpoints to the unit cube corners") {
    const FeatureBounds bounds{{{0.0, 2.0}, {10.0, 20.0}}};
    CHECK(normalize({0.0, 10.0}, bounds) == std::vector<double>{0.0, 0.0});
    CHECK(normalize({2.0, 20.0}, bounds) == std::vector<double>{1.0, 1.0});
    CHECK(normalize({1.0, 15.0}, bounds) == std::vector<double>{0.5, 0.5});
}

TEST_CASE("normalize clamps out-of-bounds coordinates") {
    const FeatureBounds bounds{{{0.0, 2.0}}};
    CHECK(normalize({-5.0}, bounds)[0] == 0.0);
    CHECK(normalize({7.0}, bounds)[0] == 1.0);
}

TEST_CASE("degenerate feature normalizes to one half") {
    const FeatureBounds bounds{{{3.0, 3.0}}};
    CHECK(normalize({3.0}, bounds)[0] == 0.5);
    CHECK(normalize({-1.0}, bounds)[0] == 0.5);
}

TEST_CASE("normalize is monotone and idempotent on unit bounds") {
    const FeatureBounds bounds{{{2.0, 8.0}}};
    double prev = -1.0;
    for (double x = 2.0; x <= 8.0; x += 0.5) {
        const double y = normalize({x}, bounds)[0];
        CHECK(y >= prev);
        prev = y;
    }
    const FeatureBounds unit{{{0.0, 1.0}, {0.0, 1.0}}};
    const std::vector<double> p{0.25, 0.75};
    CHECK(normalize(normalize(p, unit), unit) == normalize(p, unit));
}

TEST_CASE("gather copies rows in index order") {
    const Dataset ds = make_blob_dataset(30, 5);
    const auto picked = gather(ds, {4, 9, 2});
    REQUIRE(picked.size() == 3);
    CHECK(picked[0].features == ds.samples[4].features);
    CHECK(picked[1].features == ds.samples[9].features);
    CHECK(picked[2].features == ds.samples[2].features);
}
