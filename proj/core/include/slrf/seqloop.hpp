#pragma once

#include <string>
#include <vector>

#include "slrf/acquisition.hpp"
#include "slrf/classifier.hpp"
#include "slrf/dataset.hpp"
#include "slrf/evaluation.hpp"
#include "slrf/rng.hpp"

namespace slrf {

/// Substream labels. Each consumer of randomness derives its own child
/// stream from the run seed under one of these, so changing how many draws
/// one consumer makes never shifts what another one sees. In particular a
/// baseline run at the initial size and a sequential run with budget 0 train
/// bit-identical models, and extending the budget leaves earlier iterations
/// untouched.
namespace streams {
inline constexpr std::uint64_t split = 1;
inline constexpr std::uint64_t grid_search = 2;
inline constexpr std::uint64_t model_fit = 3;       // index = iteration
inline constexpr std::uint64_t baseline_sample = 4;
inline constexpr std::uint64_t run = 5;             // index = run number
} // namespace streams

/// Settings for one sequential-learning run.
struct LoopConfig {
    int budget = 250;                  // candidate points to acquire
    int synthetic_per_iteration = 1000;
    ClassifierSpec classifier;
    bool fresh_sobol_per_iteration = false; // reset the stream each round
    int eval_every = 1;                // test-set evaluation cadence
    bool tune = false;                 // grid-search on the initial set first
    ParamGrid grid;
    int cv_folds = 5;
};

/// State after one loop iteration. Iteration 0 is the model trained on the
/// initial set alone, before anything is acquired; its acquisition fields
/// hold NaN / -1. Metric fields are NaN on iterations that skip evaluation.
struct IterationRecord {
    int iteration = 0;
    int train_size = 0;
    double accuracy = 0;
    double macro_precision = 0;
    double macro_recall = 0;
    double macro_f1 = 0;
    double lcs = 0;           // least-confidence score of the ideal point
    int chosen_candidate = -1; // dataset row index moved into training
    double distance = 0;       // normalized distance ideal -> chosen
};

struct RunResult {
    std::uint64_t seed = 0;
    std::string mode;          // "sequential" or "baseline"
    ClassifierKind classifier_kind = ClassifierKind::random_forest;
    int n_train_target = 0;
    ClassifierSpec resolved;   // spec actually used (post-tuning if any)
    std::vector<IterationRecord> records;
    ConfusionMatrix final_confusion;
    Metrics final_metrics;
    Model final_model;         // the model behind final_confusion
    bool truncated = false;    // pool ran dry before the budget was spent
};

/// Pool-based sequential learning: train, score Sobol synthetic points by
/// least confidence, pull the nearest unlabeled candidate into the training
/// set, retrain from scratch, repeat for `budget` rounds.
RunResult run_sequential(const Dataset& dataset,
                         const Partition& partition,
                         const LoopConfig& config,
                         const Rng& rng);

/// Non-sequential reference: sample `n_train` rows from initial + candidate
/// uniformly without replacement (always keeping the initial rows), train
/// once, evaluate once.
RunResult run_baseline(const Dataset& dataset,
                       const Partition& partition,
                       int n_train,
                       const LoopConfig& config,
                       const Rng& rng);

/// Mean / spread statistics over repeated runs of one configuration.
/// Quartiles use linear interpolation between order statistics.
struct SummaryStat {
    double mean = 0;
    double stddev = 0; // sample standard deviation, 0 when n == 1
    double min = 0;
    double q1 = 0;
    double median = 0;
    double q3 = 0;
    double max = 0;
};

SummaryStat summarize(const std::vector<double>& values);

struct CurvePoint {
    int iteration = 0;
    int train_size = 0;
    double accuracy_mean = 0, accuracy_stddev = 0;
    double precision_mean = 0, precision_stddev = 0;
    double recall_mean = 0, recall_stddev = 0;
    double f1_mean = 0, f1_stddev = 0;
};

struct Summary {
    int run_count = 0;
    int class_count = 0;
    std::vector<CurvePoint> curve;      // one row per recorded iteration
    std::vector<double> mean_confusion; // row-major, class_count^2
    std::vector<double> mean_class_precision;
    std::vector<double> mean_class_recall;
    std::vector<double> mean_class_f1;
    // Distributions of the final-iteration metrics across runs.
    SummaryStat accuracy;
    SummaryStat macro_precision;
    SummaryStat macro_recall;
    SummaryStat macro_f1;
};

/// Runs must be congruent: same record iterations, train sizes and class
/// count. Anything else throws aggregation_error.
Summary aggregate_runs(const std::vector<RunResult>& runs);

} // namespace slrf
