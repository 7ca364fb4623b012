#include "slrf/seqloop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slrf/errors.hpp"
#include "slrf/sobol.hpp"

namespace slrf {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void check_partition(const Dataset& dataset, const Partition& part) {
    std::vector<char> seen(static_cast<std::size_t>(dataset.size()), 0);
    const auto visit = [&](const std::vector<int>& indices) {
        for (int i : indices) {
            if (i < 0 || i >= dataset.size()) {
                throw domain_error("partition index out of range");
            }
            if (seen[static_cast<std::size_t>(i)]++) {
                throw domain_error("partition sets overlap");
            }
        }
    };
    visit(part.initial);
    visit(part.candidate);
    visit(part.test);
}

ClassifierSpec resolve_spec(const Dataset& dataset,
                            const std::vector<int>& train_indices,
                            const LoopConfig& config,
                            const Rng& rng) {
    if (!config.tune) {
        return config.classifier;
    }
    const auto result = grid_search(dataset, train_indices, config.grid,
                                    config.classifier.kind, config.cv_folds,
                                    rng.derive(streams::grid_search));
    return result.best;
}

IterationRecord make_record(int iteration, int train_size, const Metrics& m) {
    IterationRecord record;
    record.iteration = iteration;
    record.train_size = train_size;
    record.accuracy = m.accuracy;
    record.macro_precision = m.macro_precision;
    record.macro_recall = m.macro_recall;
    record.macro_f1 = m.macro_f1;
    record.lcs = kNan;
    record.chosen_candidate = -1;
    record.distance = kNan;
    return record;
}

} // namespace

RunResult run_sequential(const Dataset& dataset,
                         const Partition& partition,
                         const LoopConfig& config,
                         const Rng& rng) {
    check_partition(dataset, partition);
    if (partition.initial.empty()) {
        throw config_error("sequential run needs a non-empty initial set");
    }
    if (partition.test.empty()) {
        throw config_error("sequential run needs a non-empty test set");
    }
    if (config.budget < 0 || config.synthetic_per_iteration < 1 || config.eval_every < 1) {
        throw config_error("budget must be >= 0, synthetic_per_iteration and eval_every >= 1");
    }

    RunResult result;
    result.seed = rng.seed();
    result.mode = "sequential";
    result.classifier_kind = config.classifier.kind;
    result.n_train_target = static_cast<int>(partition.initial.size()) + config.budget;
    result.resolved = resolve_spec(dataset, partition.initial, config, rng);

    std::vector<int> train = partition.initial;
    std::vector<int> pool = partition.candidate;

    // Bounds over initial + candidate, frozen for the whole run; the test
    // set stays out of them.
    std::vector<int> bounds_indices = train;
    bounds_indices.insert(bounds_indices.end(), pool.begin(), pool.end());
    const FeatureBounds bounds = feature_bounds(dataset, bounds_indices);

    SobolStream sobol(dataset.feature_count());
    const int class_count = dataset.class_count();

    Model model = fit_classifier(result.resolved, gather(dataset, train),
                                 rng.derive(streams::model_fit, 0), class_count);
    Evaluation eval = evaluate(model, dataset, partition.test);
    result.records.push_back(make_record(0, static_cast<int>(train.size()), eval.metrics));

    bool have_final_eval = true;
    for (int i = 1; i <= config.budget; ++i) {
        if (pool.empty()) {
            result.truncated = true;
            break;
        }
        if (config.fresh_sobol_per_iteration) {
            sobol.reset();
        }
        std::vector<std::vector<double>> points =
            sobol.next_points(config.synthetic_per_iteration);
        for (auto& point : points) {
            point = scale_to_bounds(point, bounds);
        }

        const AcquisitionResult acq = acquire(model, points, dataset, pool, bounds);
        const int chosen_row = pool[static_cast<std::size_t>(acq.chosen.index)];
        pool.erase(pool.begin() + acq.chosen.index);
        train.push_back(chosen_row);

        model = fit_classifier(result.resolved, gather(dataset, train),
                               rng.derive(streams::model_fit, static_cast<std::uint64_t>(i)),
                               class_count);

        const bool due = i % config.eval_every == 0 || i == config.budget || pool.empty();
        have_final_eval = due;
        if (due) {
            eval = evaluate(model, dataset, partition.test);
            IterationRecord record = make_record(i, static_cast<int>(train.size()), eval.metrics);
            record.lcs = acq.ideal.score;
            record.chosen_candidate = chosen_row;
            record.distance = acq.chosen.distance;
            result.records.push_back(record);
        }
    }

    if (!have_final_eval) {
        eval = evaluate(model, dataset, partition.test);
        result.records.push_back(
            make_record(static_cast<int>(train.size() - partition.initial.size()),
                        static_cast<int>(train.size()), eval.metrics));
    }
    result.final_confusion = eval.matrix;
    result.final_metrics = eval.metrics;
    result.final_model = std::move(model);
    return result;
}

RunResult run_baseline(const Dataset& dataset,
                       const Partition& partition,
                       int n_train,
                       const LoopConfig& config,
                       const Rng& rng) {
    check_partition(dataset, partition);
    const int n_initial = static_cast<int>(partition.initial.size());
    const int n_pool = static_cast<int>(partition.candidate.size());
    if (n_train < n_initial || n_train > n_initial + n_pool) {
        throw config_error("baseline n_train must lie in [initial size, initial + candidate]");
    }
    if (partition.test.empty()) {
        throw config_error("baseline run needs a non-empty test set");
    }

    std::vector<int> train = partition.initial;
    Rng sampler = rng.derive(streams::baseline_sample);
    const std::vector<int> extra_positions = sampler.pick_distinct(n_pool, n_train - n_initial);
    for (int position : extra_positions) {
        train.push_back(partition.candidate[static_cast<std::size_t>(position)]);
    }

    RunResult result;
    result.seed = rng.seed();
    result.mode = "baseline";
    result.classifier_kind = config.classifier.kind;
    result.n_train_target = n_train;
    result.resolved = resolve_spec(dataset, train, config, rng);

    Model model = fit_classifier(result.resolved, gather(dataset, train),
                                 rng.derive(streams::model_fit, 0),
                                 dataset.class_count());
    const Evaluation eval = evaluate(model, dataset, partition.test);
    result.records.push_back(make_record(0, n_train, eval.metrics));
    result.final_confusion = eval.matrix;
    result.final_metrics = eval.metrics;
    result.final_model = std::move(model);
    return result;
}

SummaryStat summarize(const std::vector<double>& values) {
    if (values.empty()) {
        throw domain_error("summarize over an empty value list");
    }
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();

    const auto quantile = [&](double q) {
        const double position = q * static_cast<double>(n - 1);
        const auto lower = static_cast<std::size_t>(position);
        const double frac = position - static_cast<double>(lower);
        if (lower + 1 >= n) {
            return sorted[n - 1];
        }
        return sorted[lower] * (1.0 - frac) + sorted[lower + 1] * frac;
    };

    SummaryStat stat;
    double sum = 0;
    for (double v : sorted) {
        sum += v;
    }
    stat.mean = sum / static_cast<double>(n);
    double sq = 0;
    for (double v : sorted) {
        sq += (v - stat.mean) * (v - stat.mean);
    }
    stat.stddev = n > 1 ? std::sqrt(sq / static_cast<double>(n - 1)) : 0.0;
    stat.min = sorted.front();
    stat.q1 = quantile(0.25);
    stat.median = quantile(0.5);
    stat.q3 = quantile(0.75);
    stat.max = sorted.back();
    return stat;
}

Summary aggregate_runs(const std::vector<RunResult>& runs) {
    if (runs.empty()) {
        throw aggregation_error("no runs to aggregate");
    }
    const auto& first = runs.front();
    const std::size_t record_count = first.records.size();
    const int class_count = first.final_confusion.class_count;
    for (const auto& run : runs) {
        if (run.records.size() != record_count ||
            run.final_confusion.class_count != class_count) {
            throw aggregation_error("run shapes differ; cannot aggregate");
        }
        for (std::size_t r = 0; r < record_count; ++r) {
            if (run.records[r].iteration != first.records[r].iteration ||
                run.records[r].train_size != first.records[r].train_size) {
                throw aggregation_error("run record grids differ; cannot aggregate");
            }
        }
    }

    Summary summary;
    summary.run_count = static_cast<int>(runs.size());
    summary.class_count = class_count;
    const auto run_count = static_cast<double>(runs.size());

    summary.curve.reserve(record_count);
    std::vector<double> scratch(runs.size());
    const auto stat_over_runs = [&](auto&& field, double& mean_out, double& stddev_out) {
        for (std::size_t i = 0; i < runs.size(); ++i) {
            scratch[i] = field(runs[i]);
        }
        const SummaryStat s = summarize(scratch);
        mean_out = s.mean;
        stddev_out = s.stddev;
    };
    for (std::size_t r = 0; r < record_count; ++r) {
        CurvePoint point;
        point.iteration = first.records[r].iteration;
        point.train_size = first.records[r].train_size;
        stat_over_runs([r](const RunResult& run) { return run.records[r].accuracy; },
                       point.accuracy_mean, point.accuracy_stddev);
        stat_over_runs([r](const RunResult& run) { return run.records[r].macro_precision; },
                       point.precision_mean, point.precision_stddev);
        stat_over_runs([r](const RunResult& run) { return run.records[r].macro_recall; },
                       point.recall_mean, point.recall_stddev);
        stat_over_runs([r](const RunResult& run) { return run.records[r].macro_f1; },
                       point.f1_mean, point.f1_stddev);
        summary.curve.push_back(point);
    }

    const auto cells = static_cast<std::size_t>(class_count) * static_cast<std::size_t>(class_count);
    summary.mean_confusion.assign(cells, 0.0);
    for (const auto& run : runs) {
        for (std::size_t c = 0; c < cells; ++c) {
            summary.mean_confusion[c] += static_cast<double>(run.final_confusion.counts[c]);
        }
    }
    for (double& c : summary.mean_confusion) {
        c /= run_count;
    }

    summary.mean_class_precision.assign(static_cast<std::size_t>(class_count), 0.0);
    summary.mean_class_recall.assign(static_cast<std::size_t>(class_count), 0.0);
    summary.mean_class_f1.assign(static_cast<std::size_t>(class_count), 0.0);
    for (const auto& run : runs) {
        for (int c = 0; c < class_count; ++c) {
            summary.mean_class_precision[static_cast<std::size_t>(c)] +=
                run.final_metrics.precision[static_cast<std::size_t>(c)];
            summary.mean_class_recall[static_cast<std::size_t>(c)] +=
                run.final_metrics.recall[static_cast<std::size_t>(c)];
            summary.mean_class_f1[static_cast<std::size_t>(c)] +=
                run.final_metrics.f1[static_cast<std::size_t>(c)];
        }
    }
    for (int c = 0; c < class_count; ++c) {
        summary.mean_class_precision[static_cast<std::size_t>(c)] /= run_count;
        summary.mean_class_recall[static_cast<std::size_t>(c)] /= run_count;
        summary.mean_class_f1[static_cast<std::size_t>(c)] /= run_count;
    }

    std::vector<double> finals(runs.size());
    const auto final_stat = [&](auto&& field) {
        for (std::size_t i = 0; i < runs.size(); ++i) {
            finals[i] = field(runs[i]);
        }
        return summarize(finals);
    };
    summary.accuracy = final_stat([](const RunResult& r) { return r.final_metrics.accuracy; });
    summary.macro_precision =
        final_stat([](const RunResult& r) { return r.final_metrics.macro_precision; });
    summary.macro_recall =
        final_stat([](const RunResult& r) { return r.final_metrics.macro_recall; });
    summary.macro_f1 = final_stat([](const RunResult& r) { return r.final_metrics.macro_f1; });
    return summary;
}

} // namespace slrf
