#include "inexact/harness.hpp"
#include "inexact/version.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

namespace {

constexpr const char* command_help =
    "influence      per-bit influence of a boolean function (exact or sampled)\n"
    "allocate       oblivious and impact-optimal energy splits for one budget\n"
    "alpha-sweep    oblivious/optimal impact ratio across a range of widths\n"
    "fourier        coefficient spectrum, optionally with a concentration check\n"
    "learn          low-degree regression from labeled samples\n"
    "sort-sim       noisy quicksort displacement under a chosen read scheme\n"
    "truncate-sweep displacement ratios across truncation factors\n"
    "classify       good/bad instance split for energy-aware reading\n";

int write_report(const inexact::experiment_config& cfg, const std::string& report) {
    if (cfg.out.empty()) {
        std::cout << report;
        return 0;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
        std::cerr << "error: --out: cannot open " << cfg.out << " for writing\n";
        return 1;
    }
    out << report;
    return out ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"experiment harness for energy-dependent read noise"};
    app.footer(std::string("commands:\n") + command_help);
    app.set_version_flag("--version", inexact::artifact_version);

    // locals mirror experiment_config; only values the user actually passed
    // are copied over, so config file entries survive unless overridden
    std::string command, fn, table, n_spec, k_spec, m_spec, mode, scheme, noise;
    std::string instance_path, format, out_path, config_path;
    std::optional<double> budget, epsilon, beta1, inf_bound;
    std::optional<std::uint64_t> seed;
    std::uint64_t count = 0, trials = 0, instances = 0, samples = 0;
    std::uint64_t test_samples = 0, seeds = 0;
    double c = 0.0;
    int threads = 0;

    app.add_option("command", command, "experiment to run (see list below)");
    app.add_option("--config", config_path, "JSON file with option defaults");
    app.add_option("--fn", fn, "built-in function: be, xor, or, and, majority, threshold:<t>");
    app.add_option("--table", table, "truth table JSON path (instead of --fn)");
    app.add_option("--n", n_spec, "input width; sweeps accept a,b,c or a:b");
    app.add_option("--budget", budget, "total energy budget");
    app.add_option("--N", count, "array length for sorting commands");
    app.add_option("--trials", trials, "monte carlo trials per instance");
    app.add_option("--instances", instances, "random instances per row");
    app.add_option("--samples", samples, "samples for mc influence");
    app.add_option("--mode", mode, "influence estimation: exact or mc");
    app.add_option("--k", k_spec, "degree cap (learn) or truncation factors (sweep)");
    app.add_option("--m", m_spec, "training sizes for learn, e.g. 100,1000");
    app.add_option("--test-samples", test_samples, "held-out inputs for learn");
    app.add_option("--seeds", seeds, "independent learn runs per training size");
    app.add_option("--epsilon", epsilon, "spectral concentration target");
    app.add_option("--beta1", beta1, "influence ratio lower bound");
    app.add_option("--inf-bound", inf_bound, "bound on the largest influence");
    app.add_option("--c", c, "classify threshold constant");
    app.add_option("--scheme", scheme, "sort-sim scheme: aware, oblivious, truncated:<k>");
    app.add_option("--noise", noise, "comparison noise: fresh or frozen");
    app.add_option("--instance", instance_path, "fixed sort instance JSON path");
    app.add_option("--seed", seed, "root seed; drawn and reported when absent");
    app.add_option("--format", format, "report format: csv or json");
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--threads", threads, "worker threads; 0 uses all cores");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }

    inexact::experiment_config cfg;
    try {
        if (app.count("--config") > 0) inexact::apply_config_file(cfg, config_path);

        if (app.count("command") > 0) cfg.command = command;
        if (app.count("--fn") > 0) cfg.fn = fn;
        if (app.count("--table") > 0) cfg.table = table;
        if (app.count("--n") > 0) cfg.n_spec = n_spec;
        if (app.count("--budget") > 0) cfg.budget = budget;
        if (app.count("--N") > 0) cfg.count = count;
        if (app.count("--trials") > 0) cfg.trials = trials;
        if (app.count("--instances") > 0) cfg.instances = instances;
        if (app.count("--samples") > 0) cfg.samples = samples;
        if (app.count("--mode") > 0) cfg.mode = mode;
        if (app.count("--k") > 0) cfg.k_spec = k_spec;
        if (app.count("--m") > 0) cfg.m_spec = m_spec;
        if (app.count("--test-samples") > 0) cfg.test_samples = test_samples;
        if (app.count("--seeds") > 0) cfg.seeds = seeds;
        if (app.count("--epsilon") > 0) cfg.epsilon = epsilon;
        if (app.count("--beta1") > 0) cfg.beta1 = beta1;
        if (app.count("--inf-bound") > 0) cfg.inf_bound = inf_bound;
        if (app.count("--c") > 0) cfg.c = c;
        if (app.count("--scheme") > 0) cfg.scheme = scheme;
        if (app.count("--noise") > 0) cfg.noise = noise;
        if (app.count("--instance") > 0) cfg.instance_path = instance_path;
        if (app.count("--seed") > 0) cfg.seed = seed;
        if (app.count("--format") > 0) cfg.format = format;
        if (app.count("--out") > 0) cfg.out = out_path;
        if (app.count("--threads") > 0) cfg.threads = threads;

        const std::string report = inexact::run_experiment(cfg);
        return write_report(cfg, report);
    } catch (const inexact::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
