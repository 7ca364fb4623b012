#include "slrf/model_io.hpp"

#include <fstream>

#include <json.hpp>

#include "slrf/errors.hpp"

namespace slrf {
namespace {

using nlohmann::json;

constexpr const char* kFormat = "slrf-model";
constexpr int kVersion = 1;

json node_to_json(const TreeNode& node, bool classification) {
    if (node.is_leaf()) {
        if (classification) {
            return json{{"counts", node.class_counts}};
        }
        return json{{"v", node.value}};
    }
    return json{{"f", node.feature_index}, {"t", node.threshold}, {"l", node.left},
                {"r", node.right}};
}

TreeNode node_from_json(const json& j, bool classification) {
    TreeNode node;
    if (j.contains("f")) {
        node.feature_index = j.at("f").get<int>();
        node.threshold = j.at("t").get<double>();
        node.left = j.at("l").get<int>();
        node.right = j.at("r").get<int>();
        return node;
    }
    if (classification) {
        node.class_counts = j.at("counts").get<std::vector<long long>>();
    } else {
        node.value = j.at("v").get<double>();
    }
    return node;
}

template <typename Tree>
json tree_to_json(const Tree& tree, bool classification) {
    json nodes = json::array();
    for (const auto& node : tree.nodes) {
        nodes.push_back(node_to_json(node, classification));
    }
    return json{{"nodes", std::move(nodes)}};
}

template <typename Tree>
Tree tree_from_json(const json& j, bool classification) {
    Tree tree;
    for (const auto& node : j.at("nodes")) {
        tree.nodes.push_back(node_from_json(node, classification));
    }
    return tree;
}

json depth_to_json(const std::optional<int>& depth) {
    if (depth) {
        return *depth;
    }
    return nullptr;
}

std::optional<int> depth_from_json(const json& j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<int>();
}

} // namespace

std::string model_to_json(const Model& model) {
    if (!model.trained()) {
        throw domain_error("cannot serialize an untrained model");
    }
    json doc;
    doc["format"] = kFormat;
    doc["version"] = kVersion;
    doc["kind"] = to_string(model.kind());
    doc["class_count"] = model.class_count();

    switch (model.kind()) {
    case ClassifierKind::random_forest: {
        const Forest& forest = model.forest();
        doc["params"] = {{"n_trees", forest.params.n_trees},
                         {"max_features", forest.params.max_features},
                         {"max_depth", depth_to_json(forest.params.max_depth)},
                         {"min_samples_split", forest.params.min_samples_split},
                         {"bootstrap", forest.params.bootstrap}};
        json trees = json::array();
        for (const auto& tree : forest.trees) {
            trees.push_back(tree_to_json(tree, true));
        }
        doc["trees"] = std::move(trees);
        break;
    }
    case ClassifierKind::decision_tree: {
        const DecisionTreeModel& dt = model.tree();
        doc["params"] = {{"max_depth", depth_to_json(dt.params.max_depth)},
                         {"min_samples_split", dt.params.min_samples_split}};
        doc["tree"] = tree_to_json(dt.tree, true);
        break;
    }
    case ClassifierKind::gradient_boosting: {
        const GBModel& gb = model.boosting();
        doc["params"] = {{"n_rounds", gb.params.n_rounds},
                         {"learning_rate", gb.params.learning_rate},
                         {"max_depth", gb.params.max_depth}};
        doc["present_classes"] = gb.present_classes;
        json rounds = json::array();
        for (const auto& round : gb.trees) {
            json round_json = json::array();
            for (const auto& tree : round) {
                round_json.push_back(tree_to_json(tree, false));
            }
            rounds.push_back(std::move(round_json));
        }
        doc["rounds"] = std::move(rounds);
        break;
    }
    }
    return doc.dump();
}

Model model_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("malformed model document: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != kFormat) {
            throw parse_error("not a model document");
        }
        if (doc.at("version").get<int>() != kVersion) {
            throw parse_error("unsupported model format version");
        }
        const ClassifierKind kind =
            classifier_kind_from_string(doc.at("kind").get<std::string>());
        const int class_count = doc.at("class_count").get<int>();

        switch (kind) {
        case ClassifierKind::random_forest: {
            Forest forest;
            forest.class_count = class_count;
            const json& params = doc.at("params");
            forest.params.n_trees = params.at("n_trees").get<int>();
            forest.params.max_features = params.at("max_features").get<int>();
            forest.params.max_depth = depth_from_json(params.at("max_depth"));
            forest.params.min_samples_split = params.at("min_samples_split").get<int>();
            forest.params.bootstrap = params.at("bootstrap").get<bool>();
            for (const auto& tree : doc.at("trees")) {
                forest.trees.push_back(tree_from_json<DecisionTree>(tree, true));
            }
            return Model(std::move(forest));
        }
        case ClassifierKind::decision_tree: {
            DecisionTreeModel dt;
            dt.class_count = class_count;
            const json& params = doc.at("params");
            dt.params.max_depth = depth_from_json(params.at("max_depth"));
            dt.params.min_samples_split = params.at("min_samples_split").get<int>();
            dt.tree = tree_from_json<DecisionTree>(doc.at("tree"), true);
            return Model(std::move(dt));
        }
        case ClassifierKind::gradient_boosting: {
            GBModel gb;
            gb.class_count = class_count;
            const json& params = doc.at("params");
            gb.params.n_rounds = params.at("n_rounds").get<int>();
            gb.params.learning_rate = params.at("learning_rate").get<double>();
            gb.params.max_depth = params.at("max_depth").get<int>();
            gb.present_classes = doc.at("present_classes").get<std::vector<int>>();
            for (const auto& round : doc.at("rounds")) {
                std::vector<RegressionTree> trees;
                for (const auto& tree : round) {
                    trees.push_back(tree_from_json<RegressionTree>(tree, false));
                }
                gb.trees.push_back(std::move(trees));
            }
            return Model(std::move(gb));
        }
        }
        throw parse_error("unknown classifier kind");
    } catch (const json::exception& e) {
        throw parse_error(std::string("malformed model document: ") + e.what());
    }
}

void save_model(const Model& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw io_error("cannot write " + path);
    }
    out << model_to_json(model) << '\n';
    if (!out) {
        throw io_error("failed while writing " + path);
    }
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open " + path);
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return model_from_json(text);
}

} // namespace slrf
