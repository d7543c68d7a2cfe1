#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace xkerr {

inline constexpr int kSchemaVersion = 1;

// Every run is seeded; the default is fixed so that bare invocations are
// reproducible run to run.
inline constexpr std::uint64_t kDefaultSeed = 424242;

// Parsed command line, after merging in the optional JSON config file
// (explicit flags win).  Validation happens when a command resolves the
// fields it needs: exactly one of theta/n_theta, exactly one of
// alpha/n_alpha, exactly one input source where an input is required.
struct RunConfig {
    std::string subcommand;
    std::optional<int> n;
    std::optional<double> theta;
    std::optional<double> n_theta;
    std::optional<double> alpha;
    std::optional<double> n_alpha;
    std::optional<std::string> input_path;
    std::optional<std::string> input_json;
    bool reproduce = false;
    bool asymptotic = false;
    std::string scenario;
    long long trials = -1;  // -1 means the subcommand default
    std::uint64_t seed = kDefaultSeed;
    int records = 3;
    std::optional<double> fixed_x;
    std::optional<double> grid_min;
    std::optional<double> grid_max;
    int grid_points = 2001;
    std::optional<int> family_l;
    std::string format = "json";
    std::optional<std::string> output;
    std::optional<std::string> meta;
    double max_n_theta = 0.1;
};

// Interaction strength for a known photon number; conversion from n_theta is
// theta = n_theta / n.
double resolved_theta(const RunConfig& config, int n);

// Probe amplitude; conversion from the mean photon number is alpha = sqrt(n_alpha).
double resolved_alpha(const RunConfig& config);

// Executes a validated config.  Throws; the caller maps exceptions to exit
// codes.  Returns 0.
int run_command(const RunConfig& config);

// Full entry point: parse, merge config file, execute, map errors to exit
// codes 0 (ok), 2 (config), 3 (numerical void), 1 (unexpected), with a
// machine-parsable JSON error object on standard error.
int cli_main(int argc, const char* const* argv);

}  // namespace xkerr
