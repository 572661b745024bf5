#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "mig/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo experiments for matrix-geometry median detectors"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;

    const std::vector<std::pair<std::string, std::string>> subcommands = {
        {"offset_error", "covariance offset error vs interference count"},
        {"sample_count", "estimation error vs number of samples"},
        {"statistic_profile", "per-cell detection statistics with/without filter"},
        {"ad", "anisotropy discrimination ratios"},
        {"pd_curve", "detection probability vs SCNR"},
        {"calibrate", "CFAR thresholds and empirical false-alarm rates"},
        {"validate", "check a config and print its resolved form"},
    };
    for (const auto& [name, description] : subcommands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "experiment config file (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (default: .)");
        sub->add_option("--seed", seed, "seed override (wins over the config's seed)");
        sub->add_option("--threads", threads, "worker threads; affects speed, never results");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return mig::kExitConfigError;
    }

    const std::string subcommand = app.get_subcommands().front()->get_name();
    return mig::run_cli(subcommand, config_path, out_dir, seed, threads, std::cout, std::cerr);
}
