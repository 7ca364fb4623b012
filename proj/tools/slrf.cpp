#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "slrf/errors.hpp"
#include "slrf/experiment.hpp"

namespace {

struct Overrides {
    std::string out;
    std::string mode;
    std::uint64_t seed = 0;
    int runs = 0;
    bool seed_set = false;
    bool runs_set = false;
};

slrf::ExperimentConfig load_with_overrides(const std::string& config_path,
                                           const Overrides& overrides) {
    slrf::ExperimentConfig config = config_path.empty()
                                        ? slrf::ExperimentConfig{}
                                        : slrf::load_config(config_path);
    if (!overrides.out.empty()) {
        config.output_dir = overrides.out;
    }
    if (!overrides.mode.empty()) {
        config.mode = overrides.mode;
    }
    if (overrides.seed_set) {
        config.master_seed = overrides.seed;
    }
    if (overrides.runs_set) {
        config.run_count = overrides.runs;
    }
    return config;
}

void add_override_flags(CLI::App* cmd, std::string& config_path, Overrides& overrides) {
    cmd->add_option("--config", config_path, "Experiment config file (JSON)");
    cmd->add_option("--out", overrides.out, "Output directory override");
    cmd->add_option("--seed", overrides.seed, "Master seed override")
        ->each([&overrides](const std::string&) { overrides.seed_set = true; });
    cmd->add_option("--runs", overrides.runs, "Run count override")
        ->each([&overrides](const std::string&) { overrides.runs_set = true; });
    cmd->add_option("--mode", overrides.mode, "Mode override")
        ->check(CLI::IsMember({"sequential", "baseline", "both"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pool-based sequential learning for tabular classification"};
    app.require_subcommand(1);

    std::string run_config;
    Overrides run_overrides;
    CLI::App* run = app.add_subcommand("run", "Execute the configured experiment runs");
    add_override_flags(run, run_config, run_overrides);

    std::string report_dir;
    CLI::App* report = app.add_subcommand("report", "Aggregate run results into tables");
    report->add_option("dir", report_dir, "Directory holding run results")->required();

    int sobol_dimension = 0;
    int sobol_count = 0;
    CLI::App* sobol = app.add_subcommand("sobol-dump", "Print quasi-random points");
    sobol->add_option("dimension", sobol_dimension, "Point dimension")->required();
    sobol->add_option("count", sobol_count, "Number of points")->required();

    std::string tune_config;
    Overrides tune_overrides;
    CLI::App* tune = app.add_subcommand("tune", "Run the hyperparameter grid search once");
    add_override_flags(tune, tune_config, tune_overrides);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return slrf::cmd_run(load_with_overrides(run_config, run_overrides), std::cout);
        }
        if (report->parsed()) {
            return slrf::cmd_report(report_dir, std::cout);
        }
        if (sobol->parsed()) {
            return slrf::cmd_sobol_dump(sobol_dimension, sobol_count, std::cout);
        }
        if (tune->parsed()) {
            return slrf::cmd_tune(load_with_overrides(tune_config, tune_overrides), std::cout);
        }
    } catch (const slrf::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
