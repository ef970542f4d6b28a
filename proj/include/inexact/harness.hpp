#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace inexact {

// Raised for anything wrong with a run's configuration; the CLI maps it to
// exit code 2. `field` names the offending option.
struct config_error : std::runtime_error {
    std::string field;
    config_error(std::string field_name, const std::string& message)
        : std::runtime_error("--" + field_name + ": " + message), field(std::move(field_name)) {}
};

// Resolved options for one run. String fields keep the same syntax the
// command line uses, so a config file entry and a flag go through the same
// parser. Precedence: defaults, then config file, then flags.
struct experiment_config {
    std::string command;        // influence | allocate | alpha-sweep | fourier |
                                // learn | sort-sim | truncate-sweep | classify
    std::string fn;             // built-in name, e.g. "xor", "threshold:3"
    std::string table;          // truth-table JSON path (overrides fn)
    std::string n_spec;         // single value, "a,b,c" list, or "a:b" range
    std::optional<double> budget;
    std::uint64_t count = 0;    // N, the array length for sorting commands
    std::uint64_t trials = 500;
    std::uint64_t instances = 50;
    std::uint64_t samples = 100000;   // monte carlo influence sample count
    std::string mode = "exact";       // influence: exact | mc
    std::string k_spec;         // degree cap (learn) or truncation list
    std::string m_spec = "10000";     // training sizes for learn
    std::uint64_t test_samples = 1000;
    std::uint64_t seeds = 1;    // learn: independent runs per m
    std::optional<double> epsilon;    // fourier: concentration target
    std::optional<double> beta1;      // fourier: ratio lower bound
    std::optional<double> inf_bound;  // fourier: influence bound
    double c = 1.0;             // classify threshold constant
    std::string scheme = "aware";     // sort-sim: aware | oblivious | truncated:<k>
    std::string noise = "fresh";      // sort-sim: fresh | frozen
    std::string instance_path;        // sort-sim: fixed instance JSON
    std::optional<std::uint64_t> seed;
    std::string format = "csv";       // csv | json
    std::string out;            // output path; empty writes to stdout
    int threads = 0;            // 0 uses the hardware thread count
};

// Applies a JSON config file onto cfg. Unknown keys or wrong types raise
// config_error naming the key.
void apply_config_file(experiment_config& cfg, const std::string& path);

// Runs the configured experiment and returns the full report text.
// Draws a seed (recorded in the report header) when none is set.
std::string run_experiment(const experiment_config& cfg);

}
