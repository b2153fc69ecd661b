#pragma once

// Command-line experiment runner. Settings come from (in increasing priority) built-in
// defaults, a key = value config or manifest file, and command-line flags.

#include "qpt/potential.hpp"

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpt {

/// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "QPT_OUTPUT_DIR";

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class OutputError : public std::runtime_error {
public:
    explicit OutputError(const std::string& what) : std::runtime_error(what) {}
};

using Settings = std::map<std::string, std::string>;

/// Reads `key = value` lines; '#' starts a comment, `[section]` headers are allowed and only
/// the unnamed and [config] sections are kept. Throws ConfigError naming `source` and the line.
Settings parse_settings(std::istream& is, const std::string& source);
Settings read_settings_file(const std::string& path);

/// "empty", "ball:R", "open_ball:R", optional "@c0,c1,c2,c3" centre, unions joined by '+'.
CompactSpec parse_compact_spec(const std::string& text);

struct ExperimentConfig {
    std::string command;
    int n = 1;
    int resolution = 41;
    double omega_radius = 1.0;
    std::vector<std::string> sets;
    std::uint64_t seed = 1;
    int count = 200;
    std::vector<int> n_range = {1, 2, 3};
    double tol = -1.0;
    long max_iterations = 1'000'000;
    std::string mutation = "none";
    std::string function = "normsq";
    std::string format = "text";
    std::string study = "shrinking";
    std::vector<double> radii = {0.4, 0.2, 0.1, 0.05};
    std::vector<double> thresholds = {1, 2, 4, 8, 16};
    double pole_coefficient = 0.04;
    double window_radius = 0.5;
    int convergence_resolution = 41;
    std::string output_dir = ".";
    Settings echo;  ///< normalized settings, written back into the manifest
};

/// Settings of `command` with defaults filled in; every invalid field is collected into a
/// single ConfigError.
ExperimentConfig make_config(const std::string& command, const Settings& settings);

/// Runs one subcommand, writing `<command>.tsv`, `<command>.report` (when checks ran) and
/// `<command>.manifest` into the output directory. Returns an exit code.
int run(const ExperimentConfig& config, std::ostream& out);

/// Summary of serialized reports and decay tables: per-check lines, "PASS k/N" or
/// "FAIL f/N: ids", and plot-ready two-column tables.
int report(const std::vector<std::string>& files, std::ostream& out);

/// Full command line entry point.
int main_entry(int argc, char** argv);

}  // namespace qpt
