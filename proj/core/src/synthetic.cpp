#include "slrf/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "slrf/errors.hpp"

namespace slrf {
namespace {

// Class order: lack_of_fusion, balling, desirable, keyhole.
constexpr double kProportions[4] = {0.20, 0.08, 0.29, 0.43};

// Per-feature blob centers by class, in the schema's feature order. Energy
// input rises from lack_of_fusion to keyhole, so power, absorption and (in
// reverse) velocity and beam diameter carry the signal; the material
// properties are mostly class-independent noise.
struct FeatureGen {
    double center[4];
    double sigma;
    double floor;
};

constexpr FeatureGen kFeatures[8] = {
    {{165.0, 255.0, 230.0, 305.0}, 34.0, 10.0},           // power, W
    {{1.25, 1.70, 0.85, 0.50}, 0.20, 0.05},               // velocity, m/s
    {{7780.0, 7900.0, 7950.0, 8060.0}, 170.0, 1000.0},    // density
    {{485.0, 530.0, 525.0, 550.0}, 42.0, 100.0},          // specific_heat
    {{21.0, 19.8, 18.2, 16.6}, 2.5, 1.0},                  // thermal_conductivity
    {{1645.0, 1680.0, 1690.0, 1712.0}, 46.0, 500.0},       // melting_temperature
    {{9.4e-5, 8.2e-5, 7.6e-5, 6.1e-5}, 1.5e-5, 1.0e-5},    // beam_diameter, m
    {{0.40, 0.47, 0.53, 0.63}, 0.075, 0.05},               // absorption_coefficient
};

std::vector<int> class_counts(int n) {
    std::vector<int> counts(4);
    std::vector<std::pair<double, int>> remainders;
    int assigned = 0;
    for (int c = 0; c < 4; ++c) {
        const double quota = kProportions[c] * static_cast<double>(n);
        counts[static_cast<std::size_t>(c)] = static_cast<int>(std::floor(quota));
        assigned += counts[static_cast<std::size_t>(c)];
        remainders.emplace_back(quota - std::floor(quota), c);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) {
            return a.first > b.first;
        }
        return a.second < b.second;
    });
    for (int extra = 0; extra < n - assigned; ++extra) {
        ++counts[static_cast<std::size_t>(remainders[static_cast<std::size_t>(extra) %
                                                     remainders.size()]
                                              .second)];
    }
    return counts;
}

} // namespace

Dataset make_blob_dataset(int n_samples, std::uint64_t seed) {
    if (n_samples < 1) {
        throw config_error("blob dataset needs at least one sample");
    }

    Dataset dataset;
    dataset.schema = FeatureSchema::melt_pool();
    dataset.samples.reserve(static_cast<std::size_t>(n_samples));

    const Rng root(seed);
    Rng draw = root.derive(1);
    Rng order = root.derive(2);

    const auto counts = class_counts(n_samples);
    for (int c = 0; c < 4; ++c) {
        for (int i = 0; i < counts[static_cast<std::size_t>(c)]; ++i) {
            Sample sample;
            sample.label = c;
            sample.features.resize(8);
            for (int f = 0; f < 8; ++f) {
                const FeatureGen& gen = kFeatures[f];
                const double value = gen.center[c] + gen.sigma * draw.next_normal();
                sample.features[static_cast<std::size_t>(f)] = std::max(value, gen.floor);
            }
            dataset.samples.push_back(std::move(sample));
        }
    }
    order.shuffle(dataset.samples);
    return dataset;
}

} // namespace slrf
