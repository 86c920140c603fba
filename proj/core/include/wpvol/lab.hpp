#pragma once

// Experiment harness: configuration, grid sweeps over signatures, and
// CSV/JSON tables.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "wpvol/exact_arith.hpp"
#include "wpvol/intersection.hpp"
#include "wpvol/random_model.hpp"

namespace wpvol {

struct LabConfig {
    int budget = 18;
    int digits = 30;
    std::filesystem::path cache_dir;
    unsigned threads = 1;
    std::uint64_t seed = 42;
    std::optional<int> gmin, gmax, nmin, nmax;
    Rat a = 4;
    Rat C = Rat(1, 10);
    Rat u = Rat(1, 20);
    std::optional<CutoffLength> L;
    std::string format = "csv";
    std::optional<std::filesystem::path> out;

    /// Throws std::invalid_argument when budget < 0, digits < 15, threads == 0,
    /// or the format is not csv/json.
    void validate() const;

    /// Applies one `key = value` setting (keys as the CLI flags without dashes).
    /// Throws std::invalid_argument for unknown keys or bad values.
    void set(std::string_view key, std::string_view value);
};

/// Budgets above this print a warning; the bracket closure grows steeply.
inline constexpr int kBudgetWarnAbove = 22;

/// Environment variable naming the cache directory.
inline constexpr const char* kCacheEnv = "WPLAB_CACHE";

/// Resolves a configuration with precedence flag > file > env > default.
/// `flags` holds key/value pairs already parsed from the command line.
/// Throws ParseError (with line number) for malformed config files.
LabConfig resolve_config(const std::map<std::string, std::string>& flags,
                         const std::optional<std::filesystem::path>& config_file, const char* env_cache_dir);

struct ExperimentRow {
    std::string experiment;
    std::string input;
    std::string exact;
    std::string numeric;
    std::string reference;
    std::string deviation;
    std::string aux;
    /// "PASS", "FAIL", or "-" when the row checks no inequality.
    std::string status = "-";
    std::vector<std::string> warnings;
};

struct ExperimentTable {
    std::string experiment;
    std::vector<ExperimentRow> rows;
    /// Summary notes, e.g. fitted constants; emitted as trailing comment lines in CSV.
    std::vector<std::pair<std::string, std::string>> summary;

    bool all_pass() const;
    std::string csv() const;
    std::string json() const;
};

const std::vector<std::string>& experiment_names();
/// Column meanings per experiment, for --help.
std::string experiment_help();

class UnknownExperiment : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Runs an experiment. Results are independent of config.threads.
/// Throws UnknownExperiment, BudgetExceeded, or std::runtime_error.
ExperimentTable run_experiment(std::string_view name, const LabConfig& config);

/// Same as above with a caller-owned engine (which must use config.budget).
ExperimentTable run_experiment(std::string_view name, const LabConfig& config, BracketEngine& engine);

struct WarmStats {
    std::size_t entries = 0;
    std::size_t new_entries = 0;
    double wall_seconds = 0;
    std::filesystem::path file;
};

/// Computes every bracket within the budget and persists them under
/// config.cache_dir (loading any existing file first).
/// Throws std::runtime_error when the cache directory is unwritable.
WarmStats cache_warm(const LabConfig& config, BracketEngine& engine);

/// Cache file location inside a cache directory.
std::filesystem::path cache_file(const std::filesystem::path& dir);

}  // namespace wpvol
