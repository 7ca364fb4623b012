#include "slrf/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "slrf/errors.hpp"
#include "slrf/model_io.hpp"
#include "slrf/sobol.hpp"
#include "slrf/synthetic.hpp"

namespace slrf {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

std::string hex_u64(std::uint64_t value) {
    std::ostringstream out;
    out << std::hex << value;
    return out.str();
}

std::uint64_t u64_from_hex(const std::string& text) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 16);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw parse_error("malformed hexadecimal integer: " + text);
    }
    return value;
}

void reject_unknown_keys(const json& object, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return key == k; }) == known.end()) {
            throw config_error("unknown config key '" + key + "' in " + where);
        }
    }
}

json depth_to_json(const std::optional<int>& depth) {
    return depth ? json(*depth) : json(nullptr);
}

std::optional<int> depth_from_json(const json& j) {
    return j.is_null() ? std::nullopt : std::optional<int>(j.get<int>());
}

json spec_params_to_json(const ClassifierSpec& spec) {
    switch (spec.kind) {
    case ClassifierKind::random_forest:
        return {{"n_trees", spec.forest.n_trees},
                {"max_features", spec.forest.max_features},
                {"max_depth", depth_to_json(spec.forest.max_depth)},
                {"min_samples_split", spec.forest.min_samples_split},
                {"bootstrap", spec.forest.bootstrap}};
    case ClassifierKind::decision_tree:
        return {{"max_depth", depth_to_json(spec.tree.max_depth)},
                {"min_samples_split", spec.tree.min_samples_split}};
    case ClassifierKind::gradient_boosting:
        return {{"n_rounds", spec.boosting.n_rounds},
                {"learning_rate", spec.boosting.learning_rate},
                {"max_depth", spec.boosting.max_depth}};
    }
    throw config_error("unknown classifier kind");
}

double metric_or_nan(const json& j) {
    return j.is_null() ? kNan : j.get<double>();
}

json run_to_json(const RunResult& run, std::uint64_t hash) {
    json records = json::array();
    for (const auto& r : run.records) {
        records.push_back({{"iteration", r.iteration},
                           {"train_size", r.train_size},
                           {"accuracy", r.accuracy},
                           {"precision", r.macro_precision},
                           {"recall", r.macro_recall},
                           {"f1", r.macro_f1},
                           {"lcs", r.lcs},
                           {"chosen", r.chosen_candidate},
                           {"distance", r.distance}});
    }
    json doc;
    doc["format"] = "slrf-run";
    doc["version"] = 1;
    doc["config_hash"] = hex_u64(hash);
    doc["seed"] = hex_u64(run.seed);
    doc["mode"] = run.mode;
    doc["kind"] = to_string(run.classifier_kind);
    doc["n_train_target"] = run.n_train_target;
    doc["resolved"] = spec_params_to_json(run.resolved);
    doc["truncated"] = run.truncated;
    doc["records"] = std::move(records);
    doc["class_count"] = run.final_confusion.class_count;
    doc["final_confusion"] = run.final_confusion.counts;
    doc["final_metrics"] = {{"accuracy", run.final_metrics.accuracy},
                            {"precision", run.final_metrics.precision},
                            {"recall", run.final_metrics.recall},
                            {"f1", run.final_metrics.f1},
                            {"macro_precision", run.final_metrics.macro_precision},
                            {"macro_recall", run.final_metrics.macro_recall},
                            {"macro_f1", run.final_metrics.macro_f1}};
    return doc;
}

RunResult run_from_json(const json& doc) {
    RunResult run;
    run.seed = u64_from_hex(doc.at("seed").get<std::string>());
    run.mode = doc.at("mode").get<std::string>();
    run.classifier_kind = classifier_kind_from_string(doc.at("kind").get<std::string>());
    run.n_train_target = doc.at("n_train_target").get<int>();
    run.truncated = doc.at("truncated").get<bool>();
    for (const auto& r : doc.at("records")) {
        IterationRecord record;
        record.iteration = r.at("iteration").get<int>();
        record.train_size = r.at("train_size").get<int>();
        record.accuracy = metric_or_nan(r.at("accuracy"));
        record.macro_precision = metric_or_nan(r.at("precision"));
        record.macro_recall = metric_or_nan(r.at("recall"));
        record.macro_f1 = metric_or_nan(r.at("f1"));
        record.lcs = metric_or_nan(r.at("lcs"));
        record.chosen_candidate = r.at("chosen").get<int>();
        record.distance = metric_or_nan(r.at("distance"));
        run.records.push_back(record);
    }
    run.final_confusion.class_count = doc.at("class_count").get<int>();
    run.final_confusion.counts = doc.at("final_confusion").get<std::vector<std::int64_t>>();
    const json& m = doc.at("final_metrics");
    run.final_metrics.accuracy = m.at("accuracy").get<double>();
    run.final_metrics.precision = m.at("precision").get<std::vector<double>>();
    run.final_metrics.recall = m.at("recall").get<std::vector<double>>();
    run.final_metrics.f1 = m.at("f1").get<std::vector<double>>();
    run.final_metrics.macro_precision = m.at("macro_precision").get<double>();
    run.final_metrics.macro_recall = m.at("macro_recall").get<double>();
    run.final_metrics.macro_f1 = m.at("macro_f1").get<double>();
    return run;
}

json summary_to_json(const Summary& s) {
    json curve = json::array();
    for (const auto& p : s.curve) {
        curve.push_back({{"iteration", p.iteration},
                         {"train_size", p.train_size},
                         {"accuracy_mean", p.accuracy_mean},
                         {"accuracy_stddev", p.accuracy_stddev},
                         {"precision_mean", p.precision_mean},
                         {"precision_stddev", p.precision_stddev},
                         {"recall_mean", p.recall_mean},
                         {"recall_stddev", p.recall_stddev},
                         {"f1_mean", p.f1_mean},
                         {"f1_stddev", p.f1_stddev}});
    }
    const auto stat = [](const SummaryStat& st) {
        return json{{"mean", st.mean},     {"stddev", st.stddev}, {"min", st.min},
                    {"q1", st.q1},         {"median", st.median}, {"q3", st.q3},
                    {"max", st.max}};
    };
    return json{{"run_count", s.run_count},
                {"class_count", s.class_count},
                {"curve", std::move(curve)},
                {"mean_confusion", s.mean_confusion},
                {"mean_class_precision", s.mean_class_precision},
                {"mean_class_recall", s.mean_class_recall},
                {"mean_class_f1", s.mean_class_f1},
                {"accuracy", stat(s.accuracy)},
                {"macro_precision", stat(s.macro_precision)},
                {"macro_recall", stat(s.macro_recall)},
                {"macro_f1", stat(s.macro_f1)}};
}

void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            throw io_error("cannot write " + tmp.string());
        }
        out << content;
        if (!out) {
            throw io_error("failed while writing " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

std::string curve_csv(const RunResult& run) {
    std::ostringstream out;
    out << "iteration,train_size,accuracy,precision,recall,f1,lcs,distance\n";
    for (const auto& r : run.records) {
        out << r.iteration << ',' << r.train_size << ',' << format_double(r.accuracy) << ','
            << format_double(r.macro_precision) << ',' << format_double(r.macro_recall) << ','
            << format_double(r.macro_f1) << ',' << format_double(r.lcs) << ','
            << format_double(r.distance) << '\n';
    }
    return out.str();
}

std::string kind_abbreviation(ClassifierKind kind) {
    switch (kind) {
    case ClassifierKind::random_forest:
        return "RF";
    case ClassifierKind::decision_tree:
        return "DT";
    case ClassifierKind::gradient_boosting:
        return "GB";
    }
    return "?";
}

/// Group label used in output file names: e.g. "sequential_random_forest" or
/// "baseline275_random_forest".
std::string group_label(const std::string& mode, ClassifierKind kind, int n_train) {
    std::string label = mode;
    if (mode == "baseline") {
        label += std::to_string(n_train);
    }
    return label + "_" + to_string(kind);
}

void validate_config(const ExperimentConfig& config) {
    if (config.mode != "sequential" && config.mode != "baseline" && config.mode != "both") {
        throw config_error("mode must be sequential, baseline or both");
    }
    if (config.run_count < 1) {
        throw config_error("run_count must be positive");
    }
    if (config.dataset_path.empty() && config.synthetic_samples < 1) {
        throw config_error("synthetic_samples must be positive");
    }
    if (config.budget < 0) {
        throw config_error("budget must be nonnegative");
    }
    if (config.synthetic_per_iteration < 1) {
        throw config_error("synthetic_per_iteration must be positive");
    }
    if (config.eval_every < 1) {
        throw config_error("eval_every must be positive");
    }
    if (config.cv_folds < 2) {
        throw config_error("cv_folds must be at least 2");
    }
    if ((config.mode == "baseline" || config.mode == "both") &&
        config.baseline_train_sizes.empty()) {
        throw config_error("baseline mode needs at least one baseline train size");
    }
    if (config.output_dir.empty()) {
        throw config_error("output_dir must not be empty");
    }
}

ForestParams forest_params_from_json(const json& j, const ForestParams& defaults) {
    reject_unknown_keys(j, {"n_trees", "max_features", "max_depth", "min_samples_split",
                            "bootstrap"},
                        "classifier.forest");
    ForestParams params = defaults;
    if (j.contains("n_trees")) {
        params.n_trees = j.at("n_trees").get<int>();
    }
    if (j.contains("max_features")) {
        params.max_features = j.at("max_features").get<int>();
    }
    if (j.contains("max_depth")) {
        params.max_depth = depth_from_json(j.at("max_depth"));
    }
    if (j.contains("min_samples_split")) {
        params.min_samples_split = j.at("min_samples_split").get<int>();
    }
    if (j.contains("bootstrap")) {
        params.bootstrap = j.at("bootstrap").get<bool>();
    }
    return params;
}

DTParams dt_params_from_json(const json& j, const DTParams& defaults) {
    reject_unknown_keys(j, {"max_depth", "min_samples_split"}, "classifier.tree");
    DTParams params = defaults;
    if (j.contains("max_depth")) {
        params.max_depth = depth_from_json(j.at("max_depth"));
    }
    if (j.contains("min_samples_split")) {
        params.min_samples_split = j.at("min_samples_split").get<int>();
    }
    return params;
}

GBParams gb_params_from_json(const json& j, const GBParams& defaults) {
    reject_unknown_keys(j, {"n_rounds", "learning_rate", "max_depth"}, "classifier.boosting");
    GBParams params = defaults;
    if (j.contains("n_rounds")) {
        params.n_rounds = j.at("n_rounds").get<int>();
    }
    if (j.contains("learning_rate")) {
        params.learning_rate = j.at("learning_rate").get<double>();
    }
    if (j.contains("max_depth")) {
        params.max_depth = j.at("max_depth").get<int>();
    }
    return params;
}

std::vector<std::optional<int>> depth_list_from_json(const json& j) {
    std::vector<std::optional<int>> depths;
    for (const auto& d : j) {
        depths.push_back(depth_from_json(d));
    }
    return depths;
}

json depth_list_to_json(const std::vector<std::optional<int>>& depths) {
    json list = json::array();
    for (const auto& d : depths) {
        list.push_back(depth_to_json(d));
    }
    return list;
}

} // namespace

ExperimentConfig config_from_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("malformed config: ") + e.what());
    }

    ExperimentConfig config;
    try {
        reject_unknown_keys(doc,
                            {"dataset", "split_sizes", "classifier", "tune", "grid", "cv_folds",
                             "loop", "mode", "baseline_train_sizes", "run_count", "master_seed",
                             "output_dir", "save_models"},
                            "top level");
        if (doc.contains("dataset")) {
            const json& d = doc.at("dataset");
            reject_unknown_keys(d, {"path", "synthetic_samples", "synthetic_seed"}, "dataset");
            if (d.contains("path")) {
                config.dataset_path = d.at("path").get<std::string>();
            }
            if (d.contains("synthetic_samples")) {
                config.synthetic_samples = d.at("synthetic_samples").get<int>();
            }
            if (d.contains("synthetic_seed")) {
                config.synthetic_seed = d.at("synthetic_seed").get<std::uint64_t>();
            }
        }
        if (doc.contains("split_sizes")) {
            const json& s = doc.at("split_sizes");
            reject_unknown_keys(s, {"initial", "candidate", "test"}, "split_sizes");
            if (s.contains("initial")) {
                config.split_sizes.n_initial = s.at("initial").get<int>();
            }
            if (s.contains("candidate")) {
                config.split_sizes.n_candidate = s.at("candidate").get<int>();
            }
            if (s.contains("test")) {
                config.split_sizes.n_test = s.at("test").get<int>();
            }
        }
        if (doc.contains("classifier")) {
            const json& c = doc.at("classifier");
            reject_unknown_keys(c, {"kind", "forest", "tree", "boosting"}, "classifier");
            if (c.contains("kind")) {
                config.classifier.kind =
                    classifier_kind_from_string(c.at("kind").get<std::string>());
            }
            if (c.contains("forest")) {
                config.classifier.forest =
                    forest_params_from_json(c.at("forest"), config.classifier.forest);
            }
            if (c.contains("tree")) {
                config.classifier.tree = dt_params_from_json(c.at("tree"), config.classifier.tree);
            }
            if (c.contains("boosting")) {
                config.classifier.boosting =
                    gb_params_from_json(c.at("boosting"), config.classifier.boosting);
            }
        }
        if (doc.contains("tune")) {
            config.tune = doc.at("tune").get<bool>();
        }
        if (doc.contains("grid")) {
            const json& g = doc.at("grid");
            reject_unknown_keys(g, {"forest", "tree", "boosting"}, "grid");
            if (g.contains("forest")) {
                const json& f = g.at("forest");
                reject_unknown_keys(f, {"n_trees", "max_depth", "min_samples_split"},
                                    "grid.forest");
                if (f.contains("n_trees")) {
                    config.grid.forest.n_trees = f.at("n_trees").get<std::vector<int>>();
                }
                if (f.contains("max_depth")) {
                    config.grid.forest.max_depth = depth_list_from_json(f.at("max_depth"));
                }
                if (f.contains("min_samples_split")) {
                    config.grid.forest.min_samples_split =
                        f.at("min_samples_split").get<std::vector<int>>();
                }
            }
            if (g.contains("tree")) {
                const json& t = g.at("tree");
                reject_unknown_keys(t, {"max_depth", "min_samples_split"}, "grid.tree");
                if (t.contains("max_depth")) {
                    config.grid.tree.max_depth = depth_list_from_json(t.at("max_depth"));
                }
                if (t.contains("min_samples_split")) {
                    config.grid.tree.min_samples_split =
                        t.at("min_samples_split").get<std::vector<int>>();
                }
            }
            if (g.contains("boosting")) {
                const json& b = g.at("boosting");
                reject_unknown_keys(b, {"n_rounds", "learning_rate", "max_depth"},
                                    "grid.boosting");
                if (b.contains("n_rounds")) {
                    config.grid.boosting.n_rounds = b.at("n_rounds").get<std::vector<int>>();
                }
                if (b.contains("learning_rate")) {
                    config.grid.boosting.learning_rate =
                        b.at("learning_rate").get<std::vector<double>>();
                }
                if (b.contains("max_depth")) {
                    config.grid.boosting.max_depth = b.at("max_depth").get<std::vector<int>>();
                }
            }
        }
        if (doc.contains("cv_folds")) {
            config.cv_folds = doc.at("cv_folds").get<int>();
        }
        if (doc.contains("loop")) {
            const json& l = doc.at("loop");
            reject_unknown_keys(
                l, {"budget", "synthetic_per_iteration", "fresh_sobol_per_iteration", "eval_every"},
                "loop");
            if (l.contains("budget")) {
                config.budget = l.at("budget").get<int>();
            }
            if (l.contains("synthetic_per_iteration")) {
                config.synthetic_per_iteration = l.at("synthetic_per_iteration").get<int>();
            }
            if (l.contains("fresh_sobol_per_iteration")) {
                config.fresh_sobol_per_iteration = l.at("fresh_sobol_per_iteration").get<bool>();
            }
            if (l.contains("eval_every")) {
                config.eval_every = l.at("eval_every").get<int>();
            }
        }
        if (doc.contains("mode")) {
            config.mode = doc.at("mode").get<std::string>();
        }
        if (doc.contains("baseline_train_sizes")) {
            config.baseline_train_sizes = doc.at("baseline_train_sizes").get<std::vector<int>>();
        }
        if (doc.contains("run_count")) {
            config.run_count = doc.at("run_count").get<int>();
        }
        if (doc.contains("master_seed")) {
            config.master_seed = doc.at("master_seed").get<std::uint64_t>();
        }
        if (doc.contains("output_dir")) {
            config.output_dir = doc.at("output_dir").get<std::string>();
        }
        if (doc.contains("save_models")) {
            config.save_models = doc.at("save_models").get<bool>();
        }
    } catch (const json::exception& e) {
        throw config_error(std::string("malformed config: ") + e.what());
    }
    validate_config(config);
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open config " + path);
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return config_from_string(text);
}

std::string config_to_string(const ExperimentConfig& config) {
    json doc;
    doc["dataset"] = {{"path", config.dataset_path},
                      {"synthetic_samples", config.synthetic_samples},
                      {"synthetic_seed", config.synthetic_seed}};
    doc["split_sizes"] = {{"initial", config.split_sizes.n_initial},
                          {"candidate", config.split_sizes.n_candidate},
                          {"test", config.split_sizes.n_test}};
    doc["classifier"] = {{"kind", to_string(config.classifier.kind)},
                         {"forest",
                          {{"n_trees", config.classifier.forest.n_trees},
                           {"max_features", config.classifier.forest.max_features},
                           {"max_depth", depth_to_json(config.classifier.forest.max_depth)},
                           {"min_samples_split", config.classifier.forest.min_samples_split},
                           {"bootstrap", config.classifier.forest.bootstrap}}},
                         {"tree",
                          {{"max_depth", depth_to_json(config.classifier.tree.max_depth)},
                           {"min_samples_split", config.classifier.tree.min_samples_split}}},
                         {"boosting",
                          {{"n_rounds", config.classifier.boosting.n_rounds},
                           {"learning_rate", config.classifier.boosting.learning_rate},
                           {"max_depth", config.classifier.boosting.max_depth}}}};
    doc["tune"] = config.tune;
    doc["grid"] = {{"forest",
                    {{"n_trees", config.grid.forest.n_trees},
                     {"max_depth", depth_list_to_json(config.grid.forest.max_depth)},
                     {"min_samples_split", config.grid.forest.min_samples_split}}},
                   {"tree",
                    {{"max_depth", depth_list_to_json(config.grid.tree.max_depth)},
                     {"min_samples_split", config.grid.tree.min_samples_split}}},
                   {"boosting",
                    {{"n_rounds", config.grid.boosting.n_rounds},
                     {"learning_rate", config.grid.boosting.learning_rate},
                     {"max_depth", config.grid.boosting.max_depth}}}};
    doc["cv_folds"] = config.cv_folds;
    doc["loop"] = {{"budget", config.budget},
                   {"synthetic_per_iteration", config.synthetic_per_iteration},
                   {"fresh_sobol_per_iteration", config.fresh_sobol_per_iteration},
                   {"eval_every", config.eval_every}};
    doc["mode"] = config.mode;
    doc["baseline_train_sizes"] = config.baseline_train_sizes;
    doc["run_count"] = config.run_count;
    doc["master_seed"] = config.master_seed;
    doc["output_dir"] = config.output_dir;
    doc["save_models"] = config.save_models;
    return doc.dump(2);
}

std::uint64_t config_hash(const ExperimentConfig& config) {
    ExperimentConfig canonical = config;
    canonical.output_dir = "-";
    canonical.save_models = false;
    const std::string dump = config_to_string(canonical);
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : dump) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

std::uint64_t run_seed(const ExperimentConfig& config, int run_index) {
    return Rng(config.master_seed)
        .derive(streams::run, static_cast<std::uint64_t>(run_index))
        .seed();
}

LoopConfig loop_config(const ExperimentConfig& config) {
    LoopConfig loop;
    loop.budget = config.budget;
    loop.synthetic_per_iteration = config.synthetic_per_iteration;
    loop.classifier = config.classifier;
    loop.fresh_sobol_per_iteration = config.fresh_sobol_per_iteration;
    loop.eval_every = config.eval_every;
    loop.tune = config.tune;
    loop.grid = config.grid;
    loop.cv_folds = config.cv_folds;
    return loop;
}

Dataset experiment_dataset(const ExperimentConfig& config) {
    if (config.dataset_path.empty()) {
        return make_blob_dataset(config.synthetic_samples, config.synthetic_seed);
    }
    return load_dataset(config.dataset_path, FeatureSchema::melt_pool());
}

int cmd_run(const ExperimentConfig& config, std::ostream& log) {
    validate_config(config);
    const Dataset dataset = experiment_dataset(config);
    const std::uint64_t hash = config_hash(config);
    const std::string hash8 = hex_u64(hash).substr(0, 8);
    const LoopConfig loop = loop_config(config);

    const bool sequential = config.mode == "sequential" || config.mode == "both";
    const bool baseline = config.mode == "baseline" || config.mode == "both";

    fs::create_directories(config.output_dir);

    struct Job {
        int run_index;
        std::string mode;
        int n_train; // baseline only
    };
    std::vector<Job> jobs;
    for (int r = 0; r < config.run_count; ++r) {
        if (sequential) {
            jobs.push_back({r, "sequential", 0});
        }
        if (baseline) {
            for (int n_train : config.baseline_train_sizes) {
                jobs.push_back({r, "baseline", n_train});
            }
        }
    }

    std::vector<RunResult> results(jobs.size());
    std::vector<std::string> failures(jobs.size());

    const auto work = [&](std::size_t job_index) {
        const Job& job = jobs[job_index];
        try {
            const Rng run_rng(run_seed(config, job.run_index));
            Rng split_rng = run_rng.derive(streams::split);
            const Partition part = partition(dataset, config.split_sizes, split_rng);
            if (job.mode == "sequential") {
                results[job_index] = run_sequential(dataset, part, loop, run_rng);
            } else {
                results[job_index] = run_baseline(dataset, part, job.n_train, loop, run_rng);
            }
            const RunResult& run = results[job_index];
            const std::string stem = "run_" +
                                     group_label(run.mode, run.classifier_kind,
                                                 run.n_train_target) +
                                     "_s" + hex_u64(run.seed) + "_" + hash8;
            write_atomic(fs::path(config.output_dir) / (stem + ".json"),
                         run_to_json(run, hash).dump(2) + "\n");
            const std::string curve_stem = "curve_" +
                                           group_label(run.mode, run.classifier_kind,
                                                       run.n_train_target) +
                                           "_s" + hex_u64(run.seed) + "_" + hash8;
            write_atomic(fs::path(config.output_dir) / (curve_stem + ".csv"), curve_csv(run));
            if (config.save_models) {
                const std::string model_stem = "model_" +
                                               group_label(run.mode, run.classifier_kind,
                                                           run.n_train_target) +
                                               "_s" + hex_u64(run.seed) + "_" + hash8;
                save_model(run.final_model,
                           fs::path(config.output_dir) / (model_stem + ".json"));
            }
        } catch (const std::exception& e) {
            failures[job_index] = e.what();
        }
    };

    const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t worker_count = std::min<std::size_t>(hardware, jobs.size());
    if (worker_count <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            work(i);
        }
    } else {
        std::vector<std::thread> workers;
        std::atomic<std::size_t> next{0};
        for (std::size_t w = 0; w < worker_count; ++w) {
            workers.emplace_back([&]() {
                for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
                    work(i);
                }
            });
        }
        for (auto& worker : workers) {
            worker.join();
        }
    }

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!failures[i].empty()) {
            log << "run " << jobs[i].run_index << " (" << jobs[i].mode << ") failed: "
                << failures[i] << "\n";
            return 1;
        }
    }

    // Group results and write one summary document covering all groups.
    std::map<std::string, std::vector<RunResult>> groups;
    for (const auto& run : results) {
        groups[group_label(run.mode, run.classifier_kind, run.n_train_target)].push_back(run);
    }
    json summary_doc;
    summary_doc["format"] = "slrf-summary";
    summary_doc["version"] = 1;
    summary_doc["config_hash"] = hex_u64(hash);
    summary_doc["master_seed"] = hex_u64(config.master_seed);
    summary_doc["run_count"] = config.run_count;
    json group_list = json::array();
    for (const auto& [label, runs] : groups) {
        const Summary summary = aggregate_runs(runs);
        json entry;
        entry["group"] = label;
        entry["mode"] = runs.front().mode;
        entry["kind"] = to_string(runs.front().classifier_kind);
        entry["n_train"] = runs.front().n_train_target;
        entry["summary"] = summary_to_json(summary);
        group_list.push_back(std::move(entry));
        log << label << ": mean final accuracy " << summary.accuracy.mean << " (n="
            << summary.run_count << ")\n";
    }
    summary_doc["groups"] = std::move(group_list);
    write_atomic(fs::path(config.output_dir) /
                     ("summary_s" + hex_u64(config.master_seed) + "_" + hash8 + ".json"),
                 summary_doc.dump(2) + "\n");
    return 0;
}

int cmd_report(const std::string& dir, std::ostream& log) {
    if (!fs::is_directory(dir)) {
        log << "not a directory: " << dir << "\n";
        return 1;
    }

    struct GroupKey {
        std::string hash;
        std::string mode;
        std::string kind;
        int n_train;

        bool operator<(const GroupKey& other) const {
            return std::tie(hash, mode, kind, n_train) <
                   std::tie(other.hash, other.mode, other.kind, other.n_train);
        }
    };
    std::map<GroupKey, std::vector<RunResult>> groups;

    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") {
            paths.push_back(entry.path());
        }
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& path : paths) {
        std::ifstream in(path);
        json doc;
        try {
            in >> doc;
        } catch (const json::exception&) {
            continue; // not ours
        }
        if (!doc.is_object() || doc.value("format", "") != "slrf-run") {
            continue;
        }
        RunResult run = run_from_json(doc);
        groups[{doc.at("config_hash").get<std::string>(), run.mode,
                to_string(run.classifier_kind), run.n_train_target}]
            .push_back(std::move(run));
    }

    if (groups.empty()) {
        log << "no run results found in " << dir << "\n";
        return 1;
    }

    for (const auto& [key, runs] : groups) {
        const Summary summary = aggregate_runs(runs);
        const std::string hash8 = key.hash.substr(0, std::min<std::size_t>(8, key.hash.size()));
        const std::string label =
            group_label(key.mode, classifier_kind_from_string(key.kind), key.n_train) + "_" +
            hash8;

        std::ostringstream curves;
        curves << "iteration,train_size,accuracy_mean,accuracy_stddev,precision_mean,"
                  "precision_stddev,recall_mean,recall_stddev,f1_mean,f1_stddev\n";
        for (const auto& p : summary.curve) {
            curves << p.iteration << ',' << p.train_size << ',' << format_double(p.accuracy_mean)
                   << ',' << format_double(p.accuracy_stddev) << ','
                   << format_double(p.precision_mean) << ',' << format_double(p.precision_stddev)
                   << ',' << format_double(p.recall_mean) << ',' << format_double(p.recall_stddev)
                   << ',' << format_double(p.f1_mean) << ',' << format_double(p.f1_stddev) << '\n';
        }
        write_atomic(fs::path(dir) / ("report_curves_" + label + ".csv"), curves.str());

        const int c_count = summary.class_count;
        std::ostringstream confusion;
        confusion << "true_class";
        for (int c = 0; c < c_count; ++c) {
            confusion << ",pred_" << c;
        }
        confusion << '\n';
        for (int t = 0; t < c_count; ++t) {
            confusion << t;
            for (int p = 0; p < c_count; ++p) {
                confusion << ','
                          << format_double(
                                 summary.mean_confusion[static_cast<std::size_t>(t * c_count + p)]);
            }
            confusion << '\n';
        }
        write_atomic(fs::path(dir) / ("report_confusion_" + label + ".csv"), confusion.str());

        // Mean per-run weighted metrics, reported next to the macro numbers.
        double weighted_precision = 0;
        double weighted_recall = 0;
        double weighted_f1 = 0;
        for (const auto& run : runs) {
            const WeightedMetrics w = weighted_from_matrix(run.final_confusion);
            weighted_precision += w.precision;
            weighted_recall += w.recall;
            weighted_f1 += w.f1;
        }
        const auto n_runs = static_cast<double>(runs.size());
        std::ostringstream classwise;
        classwise << "class,precision,recall,f1\n";
        for (int c = 0; c < c_count; ++c) {
            classwise << c << ','
                      << format_double(summary.mean_class_precision[static_cast<std::size_t>(c)])
                      << ','
                      << format_double(summary.mean_class_recall[static_cast<std::size_t>(c)])
                      << ','
                      << format_double(summary.mean_class_f1[static_cast<std::size_t>(c)]) << '\n';
        }
        classwise << "macro," << format_double(summary.macro_precision.mean) << ','
                  << format_double(summary.macro_recall.mean) << ','
                  << format_double(summary.macro_f1.mean) << '\n';
        classwise << "weighted," << format_double(weighted_precision / n_runs) << ','
                  << format_double(weighted_recall / n_runs) << ','
                  << format_double(weighted_f1 / n_runs) << '\n';
        write_atomic(fs::path(dir) / ("report_classwise_" + label + ".csv"), classwise.str());

        std::ostringstream boxplot;
        boxplot << "metric,min,q1,median,q3,max,mean,stddev\n";
        const auto box_row = [&](const char* name, const SummaryStat& s) {
            boxplot << name << ',' << format_double(s.min) << ',' << format_double(s.q1) << ','
                    << format_double(s.median) << ',' << format_double(s.q3) << ','
                    << format_double(s.max) << ',' << format_double(s.mean) << ','
                    << format_double(s.stddev) << '\n';
        };
        box_row("accuracy", summary.accuracy);
        box_row("macro_precision", summary.macro_precision);
        box_row("macro_recall", summary.macro_recall);
        box_row("macro_f1", summary.macro_f1);
        write_atomic(fs::path(dir) / ("report_boxplot_" + label + ".csv"), boxplot.str());

        log << label << ": " << runs.size() << " runs, mean final accuracy "
            << summary.accuracy.mean << "\n";
    }

    // Table-style comparison of sequential vs baseline families.
    std::ostringstream comparison;
    comparison << "row,kind,n_train,runs,accuracy,precision,recall,f1\n";
    bool any_sequential = false;
    bool any_baseline = false;
    for (const auto& [key, runs] : groups) {
        const Summary summary = aggregate_runs(runs);
        const std::string abbr =
            kind_abbreviation(classifier_kind_from_string(key.kind));
        std::string row;
        if (key.mode == "sequential") {
            row = "SL-" + abbr + "+";
            any_sequential = true;
        } else {
            row = "Traditional " + abbr;
            any_baseline = true;
        }
        comparison << row << ',' << key.kind << ',' << key.n_train << ',' << runs.size() << ','
                   << format_double(summary.accuracy.mean) << ','
                   << format_double(summary.macro_precision.mean) << ','
                   << format_double(summary.macro_recall.mean) << ','
                   << format_double(summary.macro_f1.mean) << '\n';
    }
    if (any_sequential && any_baseline) {
        write_atomic(fs::path(dir) / "report_comparison.csv", comparison.str());
    }
    return 0;
}

int cmd_sobol_dump(int dimension, int count, std::ostream& out) {
    if (count < 0) {
        throw config_error("count must be nonnegative");
    }
    SobolStream stream(dimension);
    for (int i = 0; i < count; ++i) {
        const auto point = stream.next_point();
        for (std::size_t d = 0; d < point.size(); ++d) {
            if (d > 0) {
                out << ',';
            }
            out << format_double(point[d]);
        }
        out << '\n';
    }
    return 0;
}

int cmd_tune(const ExperimentConfig& config, std::ostream& log) {
    validate_config(config);
    const Dataset dataset = experiment_dataset(config);
    const Rng run_rng(run_seed(config, 0));
    Rng split_rng = run_rng.derive(streams::split);
    const Partition part = partition(dataset, config.split_sizes, split_rng);

    const GridSearchResult result =
        grid_search(dataset, part.initial, config.grid, config.classifier.kind, config.cv_folds,
                    run_rng.derive(streams::grid_search));

    log << "cell,params,mean_accuracy\n";
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
        log << i << ',' << spec_params_to_json(result.cells[i].spec).dump() << ','
            << format_double(result.cells[i].mean_accuracy) << '\n';
    }
    log << "best," << spec_params_to_json(result.best).dump() << ','
        << format_double(result.best_accuracy) << '\n';
    return 0;
}

} // namespace slrf
