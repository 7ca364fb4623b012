#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "slrf/dataset.hpp"
#include "slrf/forest.hpp"
#include "slrf/gradient_boosting.hpp"
#include "slrf/rng.hpp"
#include "slrf/tree.hpp"

namespace slrf {

enum class ClassifierKind {
    random_forest,
    decision_tree,
    gradient_boosting,
};

std::string to_string(ClassifierKind kind);
ClassifierKind classifier_kind_from_string(std::string_view name);

struct DTParams {
    std::optional<int> max_depth; // nullopt = unlimited
    int min_samples_split = 2;
};

/// Which classifier to train and with which parameters. Only the record
/// matching `kind` is read; the others keep their defaults so a spec can be
/// re-targeted without loss.
struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::random_forest;
    ForestParams forest;
    DTParams tree;
    GBParams boosting;
};

/// Standalone CART tree behind the shared classifier interface: grow_tree
/// with all features available at every split.
struct DecisionTreeModel {
    DTParams params;
    int class_count = 0;
    DecisionTree tree;
};

DecisionTreeModel dt_fit(const std::vector<Sample>& samples,
                         const DTParams& params,
                         const Rng& rng,
                         int class_count);

/// Leaf class counts normalized, extended with zeros to the full class set.
ClassProbabilities dt_proba(const DecisionTreeModel& model, const std::vector<double>& x);

/// A trained classifier of any kind. All kinds satisfy the same contract:
/// proba() lies on the simplex over the full schema class set and predict()
/// is the lowest-index argmax of proba(), so everything downstream of
/// training is classifier-agnostic.
class Model {
public:
    Model() = default;
    explicit Model(Forest forest);
    explicit Model(DecisionTreeModel tree);
    explicit Model(GBModel boosting);

    ClassProbabilities proba(const std::vector<double>& x) const;
    int predict(const std::vector<double>& x) const;
    int class_count() const;
    ClassifierKind kind() const;
    bool trained() const;

    const Forest& forest() const;
    const DecisionTreeModel& tree() const;
    const GBModel& boosting() const;

private:
    std::variant<std::monostate, Forest, DecisionTreeModel, GBModel> impl_;
};

Model fit_classifier(const ClassifierSpec& spec,
                     const std::vector<Sample>& samples,
                     const Rng& rng,
                     int class_count);

} // namespace slrf
