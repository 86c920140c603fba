// wplab: run one experiment and write its table as CSV or JSON.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wpvol/lab.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitCheck = 3;

std::string usage_names() {
    std::string out;
    for (const auto& n : wpvol::experiment_names()) out += "  " + n + "\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weil-Petersson volume laboratory"};
    app.footer("Experiments:\n" + usage_names() + "\n" + wpvol::experiment_help() +
               "\n\nEnvironment: WPLAB_CACHE names the cache directory.\n"
               "Exit codes: 0 success, 1 usage, 2 budget exceeded, 3 check failure.");

    std::string experiment;
    app.add_option("experiment", experiment, "Experiment name")->required();

    // Flags are collected as text so that only the ones given override the config file.
    std::map<std::string, std::string> given;
    std::string config_path;
    const char* keys[][2] = {
        {"--budget", "max 3g-3+n (default 18)"},
        {"--digits", "decimal digits for numeric output (>= 15)"},
        {"--gmin", "lowest genus"},
        {"--gmax", "highest genus"},
        {"--nmin", "lowest puncture count"},
        {"--nmax", "highest puncture count"},
        {"--a", "n = floor(a sqrt g) scale (rational)"},
        {"--C", "Cheeger / Poisson constant (rational)"},
        {"--u", "pvol2 parameter (rational)"},
        {"--L", "cut-off length, RAT or RATpi"},
        {"--out", "output path (default stdout)"},
        {"--format", "csv or json"},
        {"--threads", "worker threads"},
        {"--seed", "random seed"},
        {"--cache-dir", "cache directory (overrides WPLAB_CACHE)"},
    };
    std::map<std::string, std::string> raw;
    for (const auto& [flag, help] : keys) app.add_option(flag, raw[flag], help);
    app.add_option("--config", config_path, "flat 'key = value' config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    for (const auto& [flag, help] : keys) {
        if (app.count(flag) == 0) continue;
        std::string key = std::string(flag).substr(2);
        given[key] = raw[flag];
    }

    wpvol::LabConfig config;
    try {
        config = wpvol::resolve_config(given, config_path.empty() ? std::nullopt
                                                                  : std::optional<std::filesystem::path>(config_path),
                                       std::getenv(wpvol::kCacheEnv));
    } catch (const std::exception& e) {
        std::cerr << "wplab: " << e.what() << "\n";
        return kExitUsage;
    }
    if (config.budget > wpvol::kBudgetWarnAbove)
        std::cerr << "wplab: warning: budget " << config.budget << " above " << wpvol::kBudgetWarnAbove
                  << "; the bracket closure may take a very long time\n";

    wpvol::ExperimentTable table;
    try {
        table = wpvol::run_experiment(experiment, config);
    } catch (const wpvol::UnknownExperiment& e) {
        std::cerr << "wplab: " << e.what() << "\n\nvalid experiments:\n" << usage_names();
        return kExitUsage;
    } catch (const wpvol::BudgetExceeded& e) {
        std::cerr << "wplab: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "wplab: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "wplab: " << e.what() << "\n";
        return kExitCheck;
    }

    const std::string text = config.format == "json" ? table.json() : table.csv();
    if (config.out) {
        std::ofstream out(*config.out, std::ios::binary);
        if (!out) {
            std::cerr << "wplab: cannot write " << config.out->string() << "\n";
            return kExitUsage;
        }
        out << text;
    } else {
        std::cout << text;
    }
    return table.all_pass() ? 0 : kExitCheck;
}
