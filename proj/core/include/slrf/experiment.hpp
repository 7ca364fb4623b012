#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slrf/dataset.hpp"
#include "slrf/evaluation.hpp"
#include "slrf/seqloop.hpp"

namespace slrf {

/// Everything a study needs: dataset source, split, classifier, loop
/// settings, repetition count and seeding. Loaded from JSON; unknown keys
/// are rejected so typos fail loudly.
struct ExperimentConfig {
    std::string dataset_path;   // empty: generate the synthetic blob table
    int synthetic_samples = 685;
    std::uint64_t synthetic_seed = 8685; // dataset seed, independent of runs
    SplitSizes split_sizes;

    ClassifierSpec classifier;
    bool tune = true;
    ParamGrid grid;
    int cv_folds = 5;

    int budget = 250;
    int synthetic_per_iteration = 1000;
    bool fresh_sobol_per_iteration = false;
    int eval_every = 1;

    std::string mode = "both"; // "sequential", "baseline" or "both"
    std::vector<int> baseline_train_sizes = {275};

    int run_count = 30;
    std::uint64_t master_seed = 20240 * 1000 + 685;

    std::string output_dir = "out";
    bool save_models = false;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_string(const std::string& text);
std::string config_to_string(const ExperimentConfig& config);

/// Stable 64-bit digest of every field that affects results (output_dir and
/// save_models are excluded). Output files carry its first 8 hex digits so
/// results from different configurations never mix silently.
std::uint64_t config_hash(const ExperimentConfig& config);

/// Seed for run `run_index`, derived from the master seed.
std::uint64_t run_seed(const ExperimentConfig& config, int run_index);

LoopConfig loop_config(const ExperimentConfig& config);

/// Execute the configured runs, writing one JSON result and one metrics-
/// curve CSV per run plus a summary JSON into output_dir. Returns a process
/// exit code.
int cmd_run(const ExperimentConfig& config, std::ostream& log);

/// Aggregate the per-run files under `dir` into comparison and curve CSVs.
int cmd_report(const std::string& dir, std::ostream& log);

/// Print `count` Sobol points of the given dimension, one row per line.
int cmd_sobol_dump(int dimension, int count, std::ostream& out);

/// Run the grid search once on the initial split and print the table.
int cmd_tune(const ExperimentConfig& config, std::ostream& log);

/// Load the configured dataset (from disk, or synthesized when no path is
/// set).
Dataset experiment_dataset(const ExperimentConfig& config);

} // namespace slrf
