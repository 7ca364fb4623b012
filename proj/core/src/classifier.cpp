#include "slrf/classifier.hpp"

#include "slrf/errors.hpp"

namespace slrf {

std::string to_string(ClassifierKind kind) {
    switch (kind) {
    case ClassifierKind::random_forest:
        return "random_forest";
    case ClassifierKind::decision_tree:
        return "decision_tree";
    case ClassifierKind::gradient_boosting:
        return "gradient_boosting";
    }
    throw config_error("unknown classifier kind");
}

ClassifierKind classifier_kind_from_string(std::string_view name) {
    if (name == "random_forest") {
        return ClassifierKind::random_forest;
    }
    if (name == "decision_tree") {
        return ClassifierKind::decision_tree;
    }
    if (name == "gradient_boosting") {
        return ClassifierKind::gradient_boosting;
    }
    throw config_error("unknown classifier kind: " + std::string(name));
}

DecisionTreeModel dt_fit(const std::vector<Sample>& samples,
                         const DTParams& params,
                         const Rng& rng,
                         int class_count) {
    if (samples.empty()) {
        throw domain_error("dt_fit over an empty sample list");
    }
    TreeParams tree_params;
    tree_params.max_features = static_cast<int>(samples.front().features.size());
    tree_params.max_depth = params.max_depth;
    tree_params.min_samples_split = params.min_samples_split;

    DecisionTreeModel model;
    model.params = params;
    model.class_count = class_count;
    model.tree = grow_tree(samples, tree_params, rng, class_count);
    return model;
}

ClassProbabilities dt_proba(const DecisionTreeModel& model, const std::vector<double>& x) {
    const auto& counts = model.tree.nodes[static_cast<std::size_t>(model.tree.leaf_for(x))]
                             .class_counts;
    long long total = 0;
    for (long long c : counts) {
        total += c;
    }
    ClassProbabilities probs(static_cast<std::size_t>(model.class_count), 0.0);
    for (std::size_t c = 0; c < counts.size(); ++c) {
        probs[c] = static_cast<double>(counts[c]) / static_cast<double>(total);
    }
    return probs;
}

Model::Model(Forest forest) : impl_(std::move(forest)) {}
Model::Model(DecisionTreeModel tree) : impl_(std::move(tree)) {}
Model::Model(GBModel boosting) : impl_(std::move(boosting)) {}

ClassProbabilities Model::proba(const std::vector<double>& x) const {
    if (const auto* f = std::get_if<Forest>(&impl_)) {
        return forest_proba(*f, x);
    }
    if (const auto* t = std::get_if<DecisionTreeModel>(&impl_)) {
        return dt_proba(*t, x);
    }
    if (const auto* g = std::get_if<GBModel>(&impl_)) {
        return gb_proba(*g, x);
    }
    throw domain_error("proba on an untrained model");
}

int Model::predict(const std::vector<double>& x) const {
    return argmax_lowest(proba(x));
}

int Model::class_count() const {
    if (const auto* f = std::get_if<Forest>(&impl_)) {
        return f->class_count;
    }
    if (const auto* t = std::get_if<DecisionTreeModel>(&impl_)) {
        return t->class_count;
    }
    if (const auto* g = std::get_if<GBModel>(&impl_)) {
        return g->class_count;
    }
    throw domain_error("class_count on an untrained model");
}

ClassifierKind Model::kind() const {
    if (std::holds_alternative<Forest>(impl_)) {
        return ClassifierKind::random_forest;
    }
    if (std::holds_alternative<DecisionTreeModel>(impl_)) {
        return ClassifierKind::decision_tree;
    }
    if (std::holds_alternative<GBModel>(impl_)) {
        return ClassifierKind::gradient_boosting;
    }
    throw domain_error("kind on an untrained model");
}

bool Model::trained() const {
    return !std::holds_alternative<std::monostate>(impl_);
}

const Forest& Model::forest() const {
    if (const auto* f = std::get_if<Forest>(&impl_)) {
        return *f;
    }
    throw domain_error("model is not a random forest");
}

const DecisionTreeModel& Model::tree() const {
    if (const auto* t = std::get_if<DecisionTreeModel>(&impl_)) {
        return *t;
    }
    throw domain_error("model is not a decision tree");
}

const GBModel& Model::boosting() const {
    if (const auto* g = std::get_if<GBModel>(&impl_)) {
        return *g;
    }
    throw domain_error("model is not a boosted ensemble");
}

Model fit_classifier(const ClassifierSpec& spec,
                     const std::vector<Sample>& samples,
                     const Rng& rng,
                     int class_count) {
    switch (spec.kind) {
    case ClassifierKind::random_forest:
        return Model(forest_fit(samples, spec.forest, rng, class_count));
    case ClassifierKind::decision_tree:
        return Model(dt_fit(samples, spec.tree, rng, class_count));
    case ClassifierKind::gradient_boosting:
        return Model(gb_fit(samples, spec.boosting, rng, class_count));
    }
    throw config_error("unknown classifier kind");
}

} // namespace slrf
