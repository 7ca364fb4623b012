#include "slrf/schema.hpp"

#include <unordered_set>

#include "slrf/errors.hpp"

namespace slrf {

int FeatureSchema::class_index(std::string_view name) const {
    for (int i = 0; i < class_count(); ++i) {
        if (class_names[static_cast<std::size_t>(i)] == name) {
            return i;
        }
    }
    return -1;
}

void FeatureSchema::validate() const {
    if (feature_names.empty()) {
        throw schema_error("schema has no feature columns");
    }
    if (class_names.empty()) {
        throw schema_error("schema has no class labels");
    }
    if (label_column.empty()) {
        throw schema_error("schema has an empty label column name");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : feature_names) {
        if (name.empty()) {
            throw schema_error("schema has an empty feature name");
        }
        if (!seen.insert(name).second) {
            throw schema_error("duplicate feature name: " + name);
        }
        if (name == label_column) {
            throw schema_error("feature name collides with label column: " + name);
        }
    }
    seen.clear();
    for (const auto& name : class_names) {
        if (name.empty()) {
            throw schema_error("schema has an empty class name");
        }
        if (!seen.insert(name).second) {
            throw schema_error("duplicate class name: " + name);
        }
    }
}

FeatureSchema FeatureSchema::melt_pool() {
    FeatureSchema schema;
    schema.feature_names = {
        "power",                  // W
        "velocity",               // m/s
        "density",                // kg/m^3
        "specific_heat",          // J/(kg K)
        "thermal_conductivity",   // W/(m K)
        "melting_temperature",    // K
        "beam_diameter",          // m
        "absorption_coefficient", // dimensionless
    };
    schema.class_names = {"lack_of_fusion", "balling", "desirable", "keyhole"};
    schema.label_column = "melt_pool_class";
    return schema;
}

} // namespace slrf
