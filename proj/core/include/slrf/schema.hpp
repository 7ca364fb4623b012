#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace slrf {

/// Column layout of a tabular classification dataset: ordered feature names
/// plus the closed, ordered set of class labels. The class order is fixed for
/// the lifetime of an experiment; it defines probability-vector indexing and
/// every lowest-index tie-break.
struct FeatureSchema {
    std::vector<std::string> feature_names;
    std::vector<std::string> class_names;
    std::string label_column = "melt_pool_class";

    int feature_count() const { return static_cast<int>(feature_names.size()); }
    int class_count() const { return static_cast<int>(class_names.size()); }

    /// Index of a label string, or -1 when unknown.
    int class_index(std::string_view name) const;

    /// Throws schema_error on duplicate or empty names.
    void validate() const;

    /// The melt-pool defect schema: eight laser/material process features and
    /// four melt-pool condition classes.
    static FeatureSchema melt_pool();
};

} // namespace slrf
