#pragma once

#include "inexact/reader.hpp"
#include "inexact/rng.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace inexact {

// Array to sort: N distinct n-bit values.
struct sort_instance {
    int n = 0;
    std::vector<std::uint64_t> elements;
    bool distinct = false;

    // uniform distinct values via rejection; needs N <= 2^n
    static sort_instance random(int n, std::size_t count, std::uint64_t seed);
    static sort_instance from_json_file(const std::string& path);
    std::string to_json() const;
};

// Per-bit read energies. Index 0 is bit 1 (least significant).
//   aware:      e_i = i, so the most significant bit gets the most energy
//   oblivious:  e_i = (n+1)/2, same total as aware
//   truncated:  the floor(n/k) most significant bits get n*k/2 each, the
//               rest get 0 (and are therefore always misread)
struct energy_scheme {
    enum class kind_t { aware, oblivious, truncated, custom };

    kind_t kind = kind_t::custom;
    double truncation_k = 0.0;  // meaningful for truncated only
    std::vector<double> energies;

    static energy_scheme aware(int n);
    static energy_scheme oblivious(int n);
    static energy_scheme truncated(int n, double k);
    static energy_scheme custom(std::vector<double> energies);

    int width() const noexcept { return static_cast<int>(energies.size()); }
    const flip_plan& plan() const { return *plan_; }
    std::string name() const;

private:
    std::shared_ptr<const flip_plan> plan_;  // built once by the factories
    void build_plan();
};

enum class ordering { less, greater };

// One noisy comparison: both operands are read once through the scheme's
// reader (a first, then b, bit 1 first) and the noisy copies are compared
// numerically, which is the most-significant-differing-bit rule. Equal noisy
// copies count as less.
ordering noisy_compare(std::uint64_t a, std::uint64_t b, const energy_scheme& scheme,
                       rng& gen);

// fresh: every comparison re-reads both operands with new noise.
// frozen: each element is read once up front and the corrupted proxies are
//         then sorted with exact comparisons.
enum class noise_mode { fresh, frozen };

struct sort_trial_report {
    std::uint64_t seed = 0;
    std::string scheme;
    std::vector<std::uint64_t> output;  // input values in produced order
    std::uint64_t wkt = 0;
    std::uint64_t comparisons = 0;
    int depth = 0;

    std::string to_json() const;
};

// Randomized quicksort over the noisy comparator: uniform pivot choice,
// elements that compare not-greater go left. Deterministic given the seed.
sort_trial_report inexact_quicksort(const sort_instance& instance,
                                    const energy_scheme& scheme, std::uint64_t seed,
                                    noise_mode mode = noise_mode::fresh);

// Sum of |a - b| over unordered pairs that appear in the wrong relative
// order compared to fully sorted. Zero iff sorted.
std::uint64_t weighted_kendall_tau(std::span<const std::uint64_t> output,
                                   const sort_instance& instance);

struct wkt_estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

// Monte Carlo mean over trials; trial t uses substream(seed, t).
wkt_estimate expected_wkt(const sort_instance& instance, const energy_scheme& scheme,
                          std::size_t trials, std::uint64_t seed, int threads = 1,
                          noise_mode mode = noise_mode::fresh);

struct ratio_estimate {
    double ratio = 0.0;
    double std_error = 0.0;
    double mean_numerator = 0.0;    // mean over instances of per-instance means
    double mean_denominator = 0.0;
    std::size_t instances = 0;
    std::size_t trials = 0;
};

// mean expected wkt of the numerator scheme over shared random instances,
// divided by the same for the denominator scheme. Instance i derives its
// elements from substream(substream(seed, i), 0) and the two scheme
// estimates from substreams 1 and 2.
ratio_estimate scheme_ratio_estimate(int n, std::size_t count,
                                     const energy_scheme& numerator,
                                     const energy_scheme& denominator,
                                     std::size_t instances, std::size_t trials,
                                     std::uint64_t seed, int threads = 1);

// oblivious over aware
ratio_estimate alpha_star_estimate(int n, std::size_t count, std::size_t instances,
                                   std::size_t trials, std::uint64_t seed,
                                   int threads = 1);

// Per-instance detail behind the ratio estimates. A zero denominator mean
// makes the overall ratio NaN instead of raising.
struct paired_wkt_stats {
    std::vector<double> numerator_means;
    std::vector<double> denominator_means;
    ratio_estimate overall;
};

paired_wkt_stats paired_scheme_stats(int n, std::size_t count,
                                     const energy_scheme& numerator,
                                     const energy_scheme& denominator,
                                     std::size_t instances, std::size_t trials,
                                     std::uint64_t seed, int threads = 1,
                                     noise_mode mode = noise_mode::fresh);

// Same, but on one fixed instance; scheme estimates use substream(seed, 1)
// and substream(seed, 2).
paired_wkt_stats paired_fixed_instance_stats(const sort_instance& instance,
                                             const energy_scheme& numerator,
                                             const energy_scheme& denominator,
                                             std::size_t trials, std::uint64_t seed,
                                             int threads = 1,
                                             noise_mode mode = noise_mode::fresh);

struct classify_result {
    std::size_t good = 0;
    std::size_t bad = 0;
    double threshold = 0.0;
    ratio_estimate overall;
};

// Instance is good when its oblivious/aware wkt ratio reaches
// c * 2^(n/6) / (N log2 N); a zero aware estimate counts as good.
classify_result classify_inputs(int n, std::size_t count, std::size_t instances,
                                double c, std::size_t trials, std::uint64_t seed,
                                int threads = 1);

struct truncation_row {
    int n = 0;
    std::size_t count = 0;
    double k = 0.0;
    std::size_t instances = 0;
    std::size_t trials = 0;
    double mean_wkt_oblivious = 0.0;
    double mean_wkt_truncated = 0.0;
    double ratio = 0.0;
    double ratio_std_error = 0.0;
    std::size_t good = 0;  // ratio >= 2^(n(k - 5/3)/6) / (N log2 N) per instance
    std::size_t bad = 0;
};

// One row per k: oblivious over truncated(k) on shared instances.
std::vector<truncation_row> truncation_sweep(int n, std::size_t count,
                                             std::span<const double> k_values,
                                             std::size_t instances, std::size_t trials,
                                             std::uint64_t seed, int threads = 1);

}
