#include "inexact/harness.hpp"

#include "inexact/energy.hpp"
#include "inexact/format.hpp"
#include "inexact/fourier.hpp"
#include "inexact/function.hpp"
#include "inexact/influence.hpp"
#include "inexact/learning.hpp"
#include "inexact/rng.hpp"
#include "inexact/sort_sim.hpp"
#include "inexact/version.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "json.hpp"

namespace inexact {

namespace {

using nlohmann::json;

// ---- option parsing shared by flags and config files ----

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (const char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

long long parse_int(const std::string& text, const char* field) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (...) {
        throw config_error(field, "'" + text + "' is not an integer");
    }
}

double parse_real(const std::string& text, const char* field) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (...) {
        throw config_error(field, "'" + text + "' is not a number");
    }
}

// "12" -> {12}; "12,18" -> {12, 18}; "4:20" -> {4 .. 20}
std::vector<int> parse_int_list(const std::string& spec, const char* field) {
    if (spec.empty()) throw config_error(field, "a value is required for this command");
    std::vector<int> out;
    if (spec.find(':') != std::string::npos) {
        const auto ends = split(spec, ':');
        if (ends.size() != 2) throw config_error(field, "range must look like a:b");
        const long long lo = parse_int(ends[0], field);
        const long long hi = parse_int(ends[1], field);
        if (lo > hi) throw config_error(field, "range is empty");
        if (hi - lo > 4096) throw config_error(field, "range is unreasonably large");
        for (long long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
        return out;
    }
    for (const auto& part : split(spec, ','))
        out.push_back(static_cast<int>(parse_int(part, field)));
    return out;
}

std::vector<double> parse_real_list(const std::string& spec, const char* field) {
    if (spec.empty()) throw config_error(field, "a value is required for this command");
    std::vector<double> out;
    for (const auto& part : split(spec, ',')) out.push_back(parse_real(part, field));
    return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& spec, const char* field) {
    std::vector<std::uint64_t> out;
    for (const int v : parse_int_list(spec, field)) {
        if (v < 0) throw config_error(field, "negative value");
        out.push_back(static_cast<std::uint64_t>(v));
    }
    return out;
}

int parse_single_int(const std::string& spec, const char* field) {
    const auto all = parse_int_list(spec, field);
    if (all.size() != 1) throw config_error(field, "exactly one value is expected here");
    return all.front();
}

// ---- shared pieces ----

std::uint64_t resolve_seed(const experiment_config& cfg) {
    if (cfg.seed) return *cfg.seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

boolean_function resolve_function(const experiment_config& cfg, int n) {
    if (!cfg.table.empty()) {
        boolean_function f = [&] {
            try {
                return boolean_function::load_truth_table(cfg.table);
            } catch (const std::exception& e) {
                throw config_error("table", e.what());
            }
        }();
        if (!cfg.n_spec.empty() && f.arity() != n)
            throw config_error("n", "value " + std::to_string(n) +
                                        " conflicts with the truth table arity " +
                                        std::to_string(f.arity()));
        return f;
    }
    if (cfg.fn.empty())
        throw config_error("fn", "a function name (or --table) is required");
    try {
        return make_function(cfg.fn, n);
    } catch (const std::exception& e) {
        throw config_error("fn", e.what());
    }
}

energy_scheme parse_scheme(const std::string& text, int n) {
    if (text == "aware") return energy_scheme::aware(n);
    if (text == "oblivious") return energy_scheme::oblivious(n);
    if (text.rfind("truncated:", 0) == 0) {
        const double k = parse_real(text.substr(10), "scheme");
        try {
            return energy_scheme::truncated(n, k);
        } catch (const std::exception& e) {
            throw config_error("scheme", e.what());
        }
    }
    throw config_error("scheme", "expected aware, oblivious, or truncated:<k>, got '" +
                                     text + "'");
}

noise_mode parse_noise(const std::string& text) {
    if (text == "fresh") return noise_mode::fresh;
    if (text == "frozen") return noise_mode::frozen;
    throw config_error("noise", "expected fresh or frozen, got '" + text + "'");
}

json config_echo(const experiment_config& cfg) {
    json doc;
    doc["command"] = cfg.command;
    doc["fn"] = cfg.fn;
    doc["table"] = cfg.table;
    doc["n"] = cfg.n_spec;
    doc["budget"] = cfg.budget ? json(*cfg.budget) : json(nullptr);
    doc["N"] = cfg.count;
    doc["trials"] = cfg.trials;
    doc["instances"] = cfg.instances;
    doc["samples"] = cfg.samples;
    doc["mode"] = cfg.mode;
    doc["k"] = cfg.k_spec;
    doc["m"] = cfg.m_spec;
    doc["test-samples"] = cfg.test_samples;
    doc["seeds"] = cfg.seeds;
    doc["epsilon"] = cfg.epsilon ? json(*cfg.epsilon) : json(nullptr);
    doc["beta1"] = cfg.beta1 ? json(*cfg.beta1) : json(nullptr);
    doc["inf-bound"] = cfg.inf_bound ? json(*cfg.inf_bound) : json(nullptr);
    doc["c"] = cfg.c;
    doc["scheme"] = cfg.scheme;
    doc["noise"] = cfg.noise;
    doc["instance"] = cfg.instance_path;
    doc["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
    doc["format"] = cfg.format;
    doc["out"] = cfg.out;
    doc["threads"] = cfg.threads;
    return doc;
}

std::string csv_preamble(std::uint64_t seed) {
    std::string out = "# artifact_version=";
    out += artifact_version;
    out += "\n# seed=";
    out += fmt_u64(seed);
    out += "\n";
    return out;
}

json json_skeleton(const experiment_config& cfg, std::uint64_t seed) {
    json doc;
    doc["artifact_version"] = artifact_version;
    doc["command"] = cfg.command;
    doc["config"] = config_echo(cfg);
    doc["seed"] = seed;
    return doc;
}

bool want_json(const experiment_config& cfg) {
    if (cfg.format == "json") return true;
    if (cfg.format == "csv") return false;
    throw config_error("format", "expected csv or json, got '" + cfg.format + "'");
}

constexpr const char* sort_csv_header =
    "n,N,k_or_scheme,instances,trials,mean_wkt_oblivious,mean_wkt_variant,ratio,"
    "ratio_stderr,good_count,bad_count,seed";

struct sort_row {
    int n;
    std::uint64_t count;
    std::string key;  // scheme name or truncation factor
    std::uint64_t instances;
    std::uint64_t trials;
    double mean_oblivious;
    double mean_variant;
    double ratio;
    double ratio_stderr;
    std::uint64_t good;
    std::uint64_t bad;
    std::uint64_t seed;
};

std::string sort_row_line(const sort_row& r) {
    return std::to_string(r.n) + "," + fmt_u64(r.count) + "," + r.key + "," +
           fmt_u64(r.instances) + "," + fmt_u64(r.trials) + "," +
           fmt_double(r.mean_oblivious) + "," + fmt_double(r.mean_variant) + "," +
           fmt_double(r.ratio) + "," + fmt_double(r.ratio_stderr) + "," +
           fmt_u64(r.good) + "," + fmt_u64(r.bad) + "," + fmt_u64(r.seed) + "\n";
}

std::string sort_rows_csv(std::uint64_t seed, const std::vector<sort_row>& rows) {
    std::string out = csv_preamble(seed);
    out += sort_csv_header;
    out += "\n";
    for (const auto& r : rows) out += sort_row_line(r);
    return out;
}

std::string sort_rows_json(const experiment_config& cfg, std::uint64_t seed,
                           const std::vector<sort_row>& rows) {
    json doc = json_skeleton(cfg, seed);
    doc["rows"] = json::array();
    for (const auto& r : rows) {
        doc["rows"].push_back({{"n", r.n},
                               {"N", r.count},
                               {"k_or_scheme", r.key},
                               {"instances", r.instances},
                               {"trials", r.trials},
                               {"mean_wkt_oblivious", r.mean_oblivious},
                               {"mean_wkt_variant", r.mean_variant},
                               {"ratio", r.ratio},
                               {"ratio_stderr", r.ratio_stderr},
                               {"good_count", r.good},
                               {"bad_count", r.bad},
                               {"seed", r.seed}});
    }
    return doc.dump(2) + "\n";
}

std::size_t count_good(const paired_wkt_stats& stats, double threshold,
                       std::size_t* bad_out) {
    std::size_t good = 0, bad = 0;
    for (std::size_t i = 0; i < stats.numerator_means.size(); ++i) {
        const double den = stats.denominator_means[i];
        if (den == 0.0 || stats.numerator_means[i] / den >= threshold)
            ++good;
        else
            ++bad;
    }
    if (bad_out) *bad_out = bad;
    return good;
}

// ---- subcommands ----

std::string run_influence(const experiment_config& cfg, std::uint64_t seed) {
    const bool as_json = want_json(cfg);
    const int n = cfg.table.empty() ? parse_single_int(cfg.n_spec, "n")
                                    : (cfg.n_spec.empty() ? 0 : parse_single_int(cfg.n_spec, "n"));
    const boolean_function f = resolve_function(cfg, n);

    influence_profile profile;
    if (cfg.mode == "exact") {
        if (f.arity() > 20)
            throw config_error("mode", "exact influence is limited to n <= 20; use mc");
        profile = exact_influence(f);
    } else if (cfg.mode == "mc") {
        if (cfg.samples == 0) throw config_error("samples", "at least one sample is required");
        profile = sampled_influence(f, cfg.samples, seed, cfg.threads);
    } else {
        throw config_error("mode", "expected exact or mc, got '" + cfg.mode + "'");
    }

    const bool mc = profile.method == influence_profile::method_kind::monte_carlo;
    if (as_json) {
        json doc = json_skeleton(cfg, seed);
        doc["name"] = f.name();
        doc["n"] = profile.n;
        doc["method"] = mc ? "monte-carlo" : "exact";
        doc["samples"] = profile.samples;
        doc["means"] = profile.means;
        if (mc) doc["std_devs"] = profile.std_devs;
        return doc.dump(2) + "\n";
    }
    std::string out = csv_preamble(seed);
    out += mc ? "bit,mean,std_dev\n" : "bit,mean\n";
    for (int i = 0; i < profile.n; ++i) {
        out += std::to_string(i + 1) + "," + fmt_double(profile.means[i]);
        if (mc) out += "," + fmt_double(profile.std_devs[i]);
        out += "\n";
    }
    return out;
}

std::string run_allocate(const experiment_config& cfg, std::uint64_t seed) {
    const bool as_json = want_json(cfg);
    const int n = cfg.table.empty() ? parse_single_int(cfg.n_spec, "n")
                                    : (cfg.n_spec.empty() ? 0 : parse_single_int(cfg.n_spec, "n"));
    const boolean_function f = resolve_function(cfg, n);
    if (!cfg.budget) throw config_error("budget", "an energy budget is required");
    if (!(*cfg.budget >= 0.0)) throw config_error("budget", "must be non-negative");

    influence_profile profile;
    if (cfg.mode == "mc") {
        profile = sampled_influence(f, cfg.samples, seed, cfg.threads);
    } else if (cfg.mode == "exact") {
        if (f.arity() > 20)
            throw config_error("mode", "exact influence is limited to n <= 20; use mc");
        profile = exact_influence(f);
    } else {
        throw config_error("mode", "expected exact or mc, got '" + cfg.mode + "'");
    }

    const allocation_result oblivious = oblivious_allocation(profile, *cfg.budget);
    const allocation_result optimal = optimal_allocation(profile, *cfg.budget);
    double alpha_value = std::numeric_limits<double>::quiet_NaN();
    std::string alpha_note;
    if (optimal.total_impact > 0.0)
        alpha_value = oblivious.total_impact / optimal.total_impact;
    else
        alpha_note = "alpha undefined: optimal impact is zero";

    if (as_json) {
        json doc = json_skeleton(cfg, seed);
        doc["name"] = f.name();
        doc["n"] = profile.n;
        doc["influence_means"] = profile.means;
        doc["oblivious"] = json::parse(oblivious.to_json());
        doc["optimal"] = json::parse(optimal.to_json());
        doc["alpha"] = std::isnan(alpha_value) ? json(nullptr) : json(alpha_value);
        doc["clamped"] = optimal.clamped();
        if (!alpha_note.empty()) doc["note"] = alpha_note;
        return doc.dump(2) + "\n";
    }
    std::string out = csv_preamble(seed);
    out += "# alpha=" + fmt_double(alpha_value) + "\n";
    out += "# clamped=" + std::string(optimal.clamped() ? "1" : "0") + "\n";
    out += "# total_impact_oblivious=" + fmt_double(oblivious.total_impact) + "\n";
    out += "# total_impact_optimal=" + fmt_double(optimal.total_impact) + "\n";
    out += "bit,influence_mean,oblivious_energy,oblivious_prob,optimal_energy,optimal_prob\n";
    for (int i = 0; i < profile.n; ++i) {
        out += std::to_string(i + 1) + "," + fmt_double(profile.means[i]) + "," +
               fmt_double(oblivious.energy.entries[i]) + "," +
               fmt_double(oblivious.probs.entries[i]) + "," +
               fmt_double(optimal.energy.entries[i]) + "," +
               fmt_double(optimal.probs.entries[i]) + "\n";
    }
    return out;
}

std::string run_alpha_sweep(const experiment_config& cfg, std::uint64_t seed) {
    const bool as_json = want_json(cfg);
    const std::vector<int> ns = parse_int_list(cfg.n_spec, "n");
    for (const int n : ns)
        if (n < 2 || n > 20)
            throw config_error("n", "sweep entries must be in [2, 20], got " +
                                        std::to_string(n));

    struct row_t {
        int n;
        double alpha;
        double closed;
    };
    std::vector<row_t> rows;
    for (const int n : ns) {
        const boolean_function f = resolve_function(cfg, n);
        const influence_profile profile = exact_influence(f);
        // default budget n(n+1)/2 keeps the closed form unclamped for
        // doubling profiles and matches the energy-aware sort total
        const double budget = cfg.budget ? *cfg.budget : n * (n + 1) / 2.0;
        double a = std::numeric_limits<double>::quiet_NaN();
        try {
            a = alpha(profile, budget);
        } catch (const std::domain_error&) {
            // all-zero profile; leave NaN
        }
        double closed = std::numeric_limits<double>::quiet_NaN();
        try {
            const beta_profile_result betas = beta_profile(profile);
            if (betas.common) {
                if (*betas.common > 1.0)
                    closed = alpha_closed_form(*betas.common, n);
                else if (std::fabs(*betas.common - 1.0) <= 1e-9)
                    closed = 1.0;
            }
        } catch (const std::domain_error&) {
            // zero influence somewhere; no closed form
        }
        rows.push_back({n, a, closed});
    }

    if (as_json) {
        json doc = json_skeleton(cfg, seed);
        doc["rows"] = json::array();
        for (const auto& r : rows)
            doc["rows"].push_back(
                {{"n", r.n}, {"alpha", r.alpha}, {"alpha_closed_form", r.closed}});
        return doc.dump(2) + "\n";
    }
    std::string out = csv_preamble(seed);
    out += "n,alpha,alpha_closed_form\n";
    for (const auto& r : rows)
        out += std::to_string(r.n) + "," + fmt_double(r.alpha) + "," +
               fmt_double(r.closed) + "\n";
    return out;
}

std::string run_fourier(const experiment_config& cfg, std::uint64_t seed) {
    const bool as_json = want_json(cfg);
    const int n = cfg.table.empty() ? parse_single_int(cfg.n_spec, "n")
                                    : (cfg.n_spec.empty() ? 0 : parse_single_int(cfg.n_spec, "n"));
    const boolean_function f = resolve_function(cfg, n);
    if (f.arity() > 16) throw config_error("n", "spectra are limited to n <= 16");
    const fourier_spectrum spectrum = fourier_transform(f);

    const int given = int(cfg.epsilon.has_value()) + int(cfg.beta1.has_value()) +
                      int(cfg.inf_bound.has_value());
    std::optional<int> degree;
    std::optional<concentration_result> conc;
    if (given == 3) {
        if (!(*cfg.epsilon > 0.0)) throw config_error("epsilon", "must be positive");
        try {
            degree = compute_k(*cfg.inf_bound, *cfg.beta1, *cfg.epsilon);
        } catch (const std::exception& e) {
            throw config_error("beta1", e.what());
        }
        const int capped = std::min(*degree, spectrum.n);
        conc = concentration_check(spectrum, *cfg.epsilon, capped);
    } else if (given != 0) {
        throw config_error(cfg.epsilon ? (cfg.beta1 ? "inf-bound" : "beta1") : "epsilon",
                           "epsilon, beta1, and inf-bound must be given together");
    }

    if (as_json) {
        json doc = json_skeleton(cfg, seed);
        doc["name"] = f.name();
        doc["n"] = spectrum.n;
        doc["parseval_mass"] = spectrum.mass();
        if (degree) {
            doc["degree_bound"] = *degree;
            doc["residual"] = conc->residual;
            doc["concentrated"] = conc->concentrated;
        }
        doc["spectrum"] = json::parse(spectrum.to_json());
        return doc.dump(2) + "\n";
    }
    std::string out = csv_preamble(seed);
    out += "# parseval_mass=" + fmt_double(spectrum.mass()) + "\n";
    if (degree) {
        out += "# degree_bound=" + std::to_string(*degree) + "\n";
        out += "# residual=" + fmt_double(conc->residual) + "\n";
        out += "# concentrated=" + std::string(conc->concentrated ? "1" : "0") + "\n";
    }
    out += "mask,coef\n";
    for (std::size_t mask = 0; mask < spectrum.coef.size(); ++mask)
        out += fmt_u64(mask) + "," + fmt_double(spectrum.coef[mask]) + "\n";
    return out;
}

std::string run_learn(const experiment_config& cfg, std::uint64_t seed) {
    const bool as_json = want_json(cfg);
    const int n = cfg.table.empty() ? parse_single_int(cfg.n_spec, "n")
                                    : (cfg.n_spec.empty() ? 0 : parse_single_int(cfg.n_spec, "n"));
    const boolean_function f = resolve_function(cfg, n);
    const int degree_cap = parse_single_int(cfg.k_spec, "k");
    if (degree_cap < 0 || degree_cap > f.arity())
        throw config_error("k", "degree cap outside [0, n]");
    const std::vector<std::uint64_t> ms = parse_u64_list(cfg.m_spec, "m");
    if (cfg.seeds == 0) throw config_error("seeds", "at least one run is required");
    if (cfg.test_samples == 0)
        throw config_error("test-samples", "at least one test input is required");

    // row r (counted across the m grid and repeats) runs with substream(seed, r)
    std::vector<learning_run> runs;
    std::uint64_t row = 0;
    for (const std::uint64_t m : ms) {
        if (m == 0) throw config_error("m", "training sizes must be positive");
        for (std::uint64_t s = 0; s < cfg.seeds; ++s) {
            runs.push_back(learning_experiment(f, degree_cap, m, cfg.test_samples,
                                               substream(seed, row)));
            ++row;
        }
    }

    if (as_json) {
        json doc = json_skeleton(cfg, seed);
        doc["rows"] = json::array();
        for (const auto& r : runs)
            doc["rows"].push_back({{"m", r.m},
                                   {"k", r.degree_cap},
                                   {"train_error", r.train_error},
                                   {"test_error", r.test_error},
                                   {"seed", r.seed}});
        return doc.dump(2) + "\n";
    }
    std::string out = csv_preamble(seed);
    out += "m,k,train_error,test_error,seed\n";
    for (const auto& r : runs)
        out += fmt_u64(r.m) + "," + std::to_string(r.degree_cap) + "," +
               fmt_double(r.train_error) + "," + fmt_double(r.test_error) + "," +
               fmt_u64(r.seed) + "\n";
    return out;
}

std::string run_sort_sim(const experiment_config& cfg, std::uint64_t seed) {
    const bool as_json = want_json(cfg);
    const noise_mode mode = parse_noise(cfg.noise);

    sort_row row{};
    row.seed = seed;
    row.trials = cfg.trials;
    if (cfg.trials == 0) throw config_error("trials", "at least one trial is required");

    paired_wkt_stats stats;
    int n = 0;
    std::uint64_t count = 0;
    if (!cfg.instance_path.empty()) {
        const sort_instance instance = [&] {
            try {
                return sort_instance::from_json_file(cfg.instance_path);
            } catch (const std::exception& e) {
                throw config_error("instance", e.what());
            }
        }();
        if (!cfg.n_spec.empty() && parse_single_int(cfg.n_spec, "n") != instance.n)
            throw config_error("n", "conflicts with the instance file width");
        if (cfg.count != 0 && cfg.count != instance.elements.size())
            throw config_error("N", "conflicts with the instance file length");
        n = instance.n;
        count = instance.elements.size();
        if (count < 2) throw config_error("instance", "needs at least two elements");
        const energy_scheme variant = parse_scheme(cfg.scheme, n);
        stats = paired_fixed_instance_stats(instance, energy_scheme::oblivious(n), variant,
                                            cfg.trials, seed, cfg.threads, mode);
        row.instances = 1;
    } else {
        n = parse_single_int(cfg.n_spec, "n");
        if (n < 1 || n > 63) throw config_error("n", "must be in [1, 63]");
        if (cfg.count < 2) throw config_error("N", "at least two elements are required");
        count = cfg.count;
        if (cfg.instances == 0) throw config_error("instances", "at least one is required");
        const energy_scheme variant = parse_scheme(cfg.scheme, n);
        stats = paired_scheme_stats(n, count, energy_scheme::oblivious(n), variant,
                                    cfg.instances, cfg.trials, seed, cfg.threads, mode);
        row.instances = cfg.instances;
    }

    row.n = n;
    row.count = count;
    row.key = parse_scheme(cfg.scheme, n).name();
    row.mean_oblivious = stats.overall.mean_numerator;
    row.mean_variant = stats.overall.mean_denominator;
    row.ratio = stats.overall.ratio;
    row.ratio_stderr = stats.overall.std_error;
    const double threshold = cfg.c * std::exp2(n / 6.0) /
                             (static_cast<double>(count) *
                              std::log2(static_cast<double>(count)));
    std::size_t bad = 0;
    row.good = count_good(stats, threshold, &bad);
    row.bad = bad;

    const std::vector<sort_row> rows{row};
    return as_json ? sort_rows_json(cfg, seed, rows) : sort_rows_csv(seed, rows);
}

std::string run_classify(const experiment_config& cfg, std::uint64_t seed) {
    const bool as_json = want_json(cfg);
    const int n = parse_single_int(cfg.n_spec, "n");
    if (n < 1 || n > 63) throw config_error("n", "must be in [1, 63]");
    if (cfg.count < 2) throw config_error("N", "at least two elements are required");
    if (cfg.instances == 0) throw config_error("instances", "at least one is required");
    if (cfg.trials == 0) throw config_error("trials", "at least one trial is required");
    if (!(cfg.c > 0.0)) throw config_error("c", "must be positive");

    const classify_result result = classify_inputs(n, cfg.count, cfg.instances, cfg.c,
                                                   cfg.trials, seed, cfg.threads);
    sort_row row{};
    row.n = n;
    row.count = cfg.count;
    row.key = "aware";
    row.instances = cfg.instances;
    row.trials = cfg.trials;
    row.mean_oblivious = result.overall.mean_numerator;
    row.mean_variant = result.overall.mean_denominator;
    row.ratio = result.overall.ratio;
    row.ratio_stderr = result.overall.std_error;
    row.good = result.good;
    row.bad = result.bad;
    row.seed = seed;

    const std::vector<sort_row> rows{row};
    if (as_json) {
        json doc = json::parse(sort_rows_json(cfg, seed, rows));
        doc["threshold"] = result.threshold;
        return doc.dump(2) + "\n";
    }
    std::string out = csv_preamble(seed);
    out += "# threshold=" + fmt_double(result.threshold) + "\n";
    out += sort_csv_header;
    out += "\n";
    out += sort_row_line(row);
    return out;
}

std::string run_truncate_sweep(const experiment_config& cfg, std::uint64_t seed) {
    const bool as_json = want_json(cfg);
    const std::vector<int> ns = parse_int_list(cfg.n_spec, "n");
    const std::vector<double> ks = parse_real_list(cfg.k_spec, "k");
    for (const int n : ns)
        if (n < 1 || n > 63) throw config_error("n", "entries must be in [1, 63]");
    for (const double k : ks)
        if (!(k >= 1.0)) throw config_error("k", "entries must be at least 1");
    if (cfg.count < 2) throw config_error("N", "at least two elements are required");
    if (cfg.instances == 0) throw config_error("instances", "at least one is required");
    if (cfg.trials == 0) throw config_error("trials", "at least one trial is required");

    std::vector<sort_row> rows;
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        const auto swept = truncation_sweep(ns[ni], cfg.count, ks, cfg.instances,
                                            cfg.trials, substream(seed, ni), cfg.threads);
        for (const auto& t : swept) {
            sort_row row{};
            row.n = t.n;
            row.count = t.count;
            row.key = fmt_double(t.k);
            row.instances = t.instances;
            row.trials = t.trials;
            row.mean_oblivious = t.mean_wkt_oblivious;
            row.mean_variant = t.mean_wkt_truncated;
            row.ratio = t.ratio;
            row.ratio_stderr = t.ratio_std_error;
            row.good = t.good;
            row.bad = t.bad;
            row.seed = seed;
            rows.push_back(row);
        }
    }
    return as_json ? sort_rows_json(cfg, seed, rows) : sort_rows_csv(seed, rows);
}

}  // namespace

void apply_config_file(experiment_config& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config", "cannot open file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw config_error("config", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw config_error("config", "must hold a JSON object");

    const auto as_string = [](const json& v, const char* field) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
        if (v.is_number_float()) return fmt_double(v.get<double>());
        throw config_error(field, "expected a string or number");
    };
    const auto as_u64 = [](const json& v, const char* field) -> std::uint64_t {
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer() && v.get<long long>() >= 0)
            return static_cast<std::uint64_t>(v.get<long long>());
        throw config_error(field, "expected a non-negative integer");
    };
    const auto as_real = [](const json& v, const char* field) -> double {
        if (v.is_number()) return v.get<double>();
        throw config_error(field, "expected a number");
    };

    for (const auto& [key, value] : doc.items()) {
        if (key == "command") cfg.command = as_string(value, "command");
        else if (key == "fn") cfg.fn = as_string(value, "fn");
        else if (key == "table") cfg.table = as_string(value, "table");
        else if (key == "n") cfg.n_spec = as_string(value, "n");
        else if (key == "budget") cfg.budget = as_real(value, "budget");
        else if (key == "N") cfg.count = as_u64(value, "N");
        else if (key == "trials") cfg.trials = as_u64(value, "trials");
        else if (key == "instances") cfg.instances = as_u64(value, "instances");
        else if (key == "samples") cfg.samples = as_u64(value, "samples");
        else if (key == "mode") cfg.mode = as_string(value, "mode");
        else if (key == "k") cfg.k_spec = as_string(value, "k");
        else if (key == "m") cfg.m_spec = as_string(value, "m");
        else if (key == "test-samples") cfg.test_samples = as_u64(value, "test-samples");
        else if (key == "seeds") cfg.seeds = as_u64(value, "seeds");
        else if (key == "epsilon") cfg.epsilon = as_real(value, "epsilon");
        else if (key == "beta1") cfg.beta1 = as_real(value, "beta1");
        else if (key == "inf-bound") cfg.inf_bound = as_real(value, "inf-bound");
        else if (key == "c") cfg.c = as_real(value, "c");
        else if (key == "scheme") cfg.scheme = as_string(value, "scheme");
        else if (key == "noise") cfg.noise = as_string(value, "noise");
        else if (key == "instance") cfg.instance_path = as_string(value, "instance");
        else if (key == "seed") cfg.seed = as_u64(value, "seed");
        else if (key == "format") cfg.format = as_string(value, "format");
        else if (key == "out") cfg.out = as_string(value, "out");
        else if (key == "threads") cfg.threads = static_cast<int>(as_u64(value, "threads"));
        else throw config_error(key, "unknown config key");
    }
}

std::string run_experiment(const experiment_config& cfg) {
    const std::uint64_t seed = resolve_seed(cfg);
    if (cfg.command == "influence") return run_influence(cfg, seed);
    if (cfg.command == "allocate") return run_allocate(cfg, seed);
    if (cfg.command == "alpha-sweep") return run_alpha_sweep(cfg, seed);
    if (cfg.command == "fourier") return run_fourier(cfg, seed);
    if (cfg.command == "learn") return run_learn(cfg, seed);
    if (cfg.command == "sort-sim") return run_sort_sim(cfg, seed);
    if (cfg.command == "classify") return run_classify(cfg, seed);
    if (cfg.command == "truncate-sweep") return run_truncate_sweep(cfg, seed);
    throw config_error("command",
                       cfg.command.empty()
                           ? std::string("a command is required")
                           : "unknown command '" + cfg.command + "'");
}

}
