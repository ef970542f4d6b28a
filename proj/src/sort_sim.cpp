#include "inexact/sort_sim.hpp"

#include "inexact/energy.hpp"
#include "inexact/format.hpp"
#include "inexact/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace inexact {

using wide_uint = unsigned __int128;

sort_instance sort_instance::random(int n, std::size_t count, std::uint64_t seed) {
    const std::uint64_t mask = width_mask(n);
    if (count == 0) throw std::invalid_argument("instance needs at least one element");
    if (n < 63 && count > (std::uint64_t{1} << n))
        throw std::invalid_argument("cannot draw " + std::to_string(count) +
                                    " distinct values from 2^" + std::to_string(n));
    sort_instance out;
    out.n = n;
    out.elements.reserve(count);
    std::unordered_set<std::uint64_t> seen;
    rng gen(seed);
    while (out.elements.size() < count) {
        const std::uint64_t v = gen.next() & mask;
        if (seen.insert(v).second) out.elements.push_back(v);
    }
    out.distinct = true;
    return out;
}

sort_instance sort_instance::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("instance file " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("N") || !doc.contains("elements"))
        throw std::runtime_error("instance file " + path +
                                 " must be an object with fields n, N, elements");
    const int n = doc["n"].get<int>();
    const std::uint64_t mask = width_mask(n);
    if (!doc["elements"].is_array())
        throw std::runtime_error("instance file " + path + ": elements must be an array");
    if (doc["N"].get<std::size_t>() != doc["elements"].size())
        throw std::runtime_error("instance file " + path + ": N does not match element count");
    sort_instance out;
    out.n = n;
    for (const auto& v : doc["elements"]) {
        const std::uint64_t value = v.get<std::uint64_t>();
        if (value > mask)
            throw std::runtime_error("instance file " + path + ": element " +
                                     std::to_string(value) + " does not fit " +
                                     std::to_string(n) + " bits");
        out.elements.push_back(value);
    }
    if (out.elements.empty())
        throw std::runtime_error("instance file " + path + ": no elements");
    std::unordered_set<std::uint64_t> seen(out.elements.begin(), out.elements.end());
    out.distinct = seen.size() == out.elements.size();
    return out;
}

std::string sort_instance::to_json() const {
    nlohmann::json doc;
    doc["n"] = n;
    doc["N"] = elements.size();
    doc["elements"] = elements;
    return doc.dump(2);
}

void energy_scheme::build_plan() {
    plan_ = std::make_shared<const flip_plan>(probs_from_energies(energies));
}

energy_scheme energy_scheme::aware(int n) {
    width_mask(n);
    energy_scheme s;
    s.kind = kind_t::aware;
    s.energies.resize(n);
    for (int i = 0; i < n; ++i) s.energies[i] = static_cast<double>(i + 1);
    s.build_plan();
    return s;
}

energy_scheme energy_scheme::oblivious(int n) {
    width_mask(n);
    energy_scheme s;
    s.kind = kind_t::oblivious;
    s.energies.assign(n, (n + 1) / 2.0);
    s.build_plan();
    return s;
}

energy_scheme energy_scheme::truncated(int n, double k) {
    width_mask(n);
    if (!(k >= 1.0)) throw std::invalid_argument("truncation factor must be at least 1");
    const int funded = std::max(1, static_cast<int>(std::floor(n / k + 1e-9)));
    energy_scheme s;
    s.kind = kind_t::truncated;
    s.truncation_k = k;
    s.energies.assign(n, 0.0);
    for (int i = n - funded; i < n; ++i) s.energies[i] = n * k / 2.0;
    s.build_plan();
    return s;
}

energy_scheme energy_scheme::custom(std::vector<double> energies) {
    if (energies.empty() || energies.size() > 63)
        throw std::invalid_argument("scheme needs between 1 and 63 energies");
    energy_scheme s;
    s.kind = kind_t::custom;
    s.energies = std::move(energies);
    s.build_plan();
    return s;
}

std::string energy_scheme::name() const {
    switch (kind) {
        case kind_t::aware: return "aware";
        case kind_t::oblivious: return "oblivious";
        case kind_t::truncated: {
            std::string k = fmt_double(truncation_k);
            return "truncated(" + k + ")";
        }
        default: return "custom";
    }
}

ordering noisy_compare(std::uint64_t a, std::uint64_t b, const energy_scheme& scheme,
                       rng& gen) {
    const std::uint64_t mask = width_mask(scheme.width());
    if (a > mask || b > mask)
        throw std::invalid_argument("operand does not fit the scheme width " +
                                    std::to_string(scheme.width()));
    if (a == b) throw std::invalid_argument("comparison operands must be distinct");
    const flip_plan& plan = scheme.plan();
    const std::uint64_t noisy_a = plan.scramble(a, gen);
    const std::uint64_t noisy_b = plan.scramble(b, gen);
    return noisy_a <= noisy_b ? ordering::less : ordering::greater;
}

namespace {

struct quicksort_state {
    const energy_scheme* scheme;
    rng* gen;
    std::uint64_t comparisons = 0;
    int depth = 0;
};

// values carry (sort key, payload); fresh mode compares payloads through the
// noisy reader every time, frozen mode compares pre-corrupted keys exactly
template <bool Fresh>
void quicksort(std::vector<std::pair<std::uint64_t, std::uint64_t>>& v, std::size_t lo,
               std::size_t hi, quicksort_state& st, int level) {
    if (hi - lo < 2) return;
    st.depth = std::max(st.depth, level);
    const std::size_t pivot_pos = lo + st.gen->below(hi - lo);
    std::swap(v[pivot_pos], v[hi - 1]);
    const auto pivot = v[hi - 1];
    std::size_t store = lo;
    for (std::size_t i = lo; i + 1 < hi; ++i) {
        ++st.comparisons;
        bool goes_left;
        if constexpr (Fresh) {
            goes_left = noisy_compare(v[i].second, pivot.second, *st.scheme, *st.gen) ==
                        ordering::less;
        } else {
            goes_left = v[i].first <= pivot.first;  // equal proxies count as less
        }
        if (goes_left) {
            std::swap(v[i], v[store]);
            ++store;
        }
    }
    std::swap(v[store], v[hi - 1]);
    quicksort<Fresh>(v, lo, store, st, level + 1);
    quicksort<Fresh>(v, store + 1, hi, st, level + 1);
}

}  // namespace

sort_trial_report inexact_quicksort(const sort_instance& instance,
                                    const energy_scheme& scheme, std::uint64_t seed,
                                    noise_mode mode) {
    if (instance.n != scheme.width())
        throw std::invalid_argument("instance width " + std::to_string(instance.n) +
                                    " does not match scheme width " +
                                    std::to_string(scheme.width()));
    if (!instance.distinct)
        throw std::invalid_argument("sorting needs distinct elements");

    rng gen(seed);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> v;
    v.reserve(instance.elements.size());
    if (mode == noise_mode::frozen) {
        // one corrupted read per element, in input order
        const flip_plan& plan = scheme.plan();
        for (const std::uint64_t e : instance.elements)
            v.emplace_back(plan.scramble(e, gen), e);
    } else {
        for (const std::uint64_t e : instance.elements) v.emplace_back(0, e);
    }

    quicksort_state st;
    st.scheme = &scheme;
    st.gen = &gen;
    if (mode == noise_mode::fresh)
        quicksort<true>(v, 0, v.size(), st, 1);
    else
        quicksort<false>(v, 0, v.size(), st, 1);

    sort_trial_report report;
    report.seed = seed;
    report.scheme = scheme.name();
    report.output.reserve(v.size());
    for (const auto& [proxy, value] : v) report.output.push_back(value);
    report.wkt = weighted_kendall_tau(report.output, instance);
    report.comparisons = st.comparisons;
    report.depth = st.depth;
    return report;
}

std::uint64_t weighted_kendall_tau(std::span<const std::uint64_t> output,
                                   const sort_instance& instance) {
    if (output.size() != instance.elements.size())
        throw std::invalid_argument("output length does not match the instance");
    std::vector<std::uint64_t> a(output.begin(), output.end());
    std::vector<std::uint64_t> b = instance.elements;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw std::invalid_argument("output is not a permutation of the instance");

    wide_uint sum = 0;
    for (std::size_t i = 0; i < output.size(); ++i)
        for (std::size_t j = i + 1; j < output.size(); ++j)
            if (output[i] > output[j]) sum += output[i] - output[j];
    if (sum > static_cast<wide_uint>(UINT64_MAX))
        throw std::overflow_error("weighted inversion sum exceeds 64 bits");
    return static_cast<std::uint64_t>(sum);
}

wkt_estimate expected_wkt(const sort_instance& instance, const energy_scheme& scheme,
                          std::size_t trials, std::uint64_t seed, int threads,
                          noise_mode mode) {
    if (trials == 0) throw std::invalid_argument("estimate needs at least one trial");
    std::vector<std::uint64_t> wkts(trials);
    parallel_for(trials, threads, [&](std::size_t t) {
        wkts[t] = inexact_quicksort(instance, scheme, substream(seed, t), mode).wkt;
    });

    wide_uint sum = 0, sum_sq = 0;
    for (const std::uint64_t w : wkts) {
        sum += w;
        sum_sq += static_cast<wide_uint>(w) * w;
    }
    wkt_estimate out;
    out.trials = trials;
    out.mean = static_cast<double>(sum) / static_cast<double>(trials);
    if (trials > 1) {
        const long double num =
            static_cast<long double>(sum_sq) - static_cast<long double>(sum) * out.mean;
        const long double var = num / static_cast<long double>(trials - 1);
        out.std_error = var > 0 ? std::sqrt(static_cast<double>(var) /
                                            static_cast<double>(trials))
                                : 0.0;
    }
    return out;
}

namespace {

struct paired_means {
    std::vector<double> num_means;
    std::vector<double> den_means;
    wkt_estimate single_num, single_den;  // trial-level detail, used when instances == 1
};

paired_means paired_instance_means(int n, std::size_t count, const energy_scheme& num,
                                   const energy_scheme& den, std::size_t instances,
                                   std::size_t trials, std::uint64_t seed, int threads,
                                   noise_mode mode = noise_mode::fresh) {
    if (instances == 0) throw std::invalid_argument("estimate needs at least one instance");
    paired_means out;
    out.num_means.resize(instances);
    out.den_means.resize(instances);
    std::vector<wkt_estimate> num_est(instances), den_est(instances);
    parallel_for(instances, threads, [&](std::size_t i) {
        const std::uint64_t inst_seed = substream(seed, i);
        const sort_instance instance = sort_instance::random(n, count, substream(inst_seed, 0));
        num_est[i] = expected_wkt(instance, num, trials, substream(inst_seed, 1), 1, mode);
        den_est[i] = expected_wkt(instance, den, trials, substream(inst_seed, 2), 1, mode);
        out.num_means[i] = num_est[i].mean;
        out.den_means[i] = den_est[i].mean;
    });
    out.single_num = num_est.front();
    out.single_den = den_est.front();
    return out;
}

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (const double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

double std_error_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (const double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) /
                     static_cast<double>(v.size()));
}

ratio_estimate ratio_from(const paired_means& pm, std::size_t instances,
                          std::size_t trials, bool throw_on_zero = true) {
    ratio_estimate out;
    out.instances = instances;
    out.trials = trials;
    out.mean_numerator = mean_of(pm.num_means);
    out.mean_denominator = mean_of(pm.den_means);
    if (out.mean_denominator == 0.0) {
        if (throw_on_zero)
            throw std::domain_error("ratio undefined: denominator scheme produced an "
                                    "exactly zero mean weighted inversion sum");
        out.ratio = std::numeric_limits<double>::quiet_NaN();
        out.std_error = 0.0;
        return out;
    }
    out.ratio = out.mean_numerator / out.mean_denominator;
    double se_num, se_den;
    if (instances > 1) {
        se_num = std_error_of(pm.num_means, out.mean_numerator);
        se_den = std_error_of(pm.den_means, out.mean_denominator);
    } else {
        se_num = pm.single_num.std_error;
        se_den = pm.single_den.std_error;
    }
    // first-order error propagation for the ratio of two means
    const double rel_num = out.mean_numerator == 0.0 ? 0.0 : se_num / out.mean_numerator;
    const double rel_den = se_den / out.mean_denominator;
    out.std_error = out.ratio * std::sqrt(rel_num * rel_num + rel_den * rel_den);
    return out;
}

}  // namespace

ratio_estimate scheme_ratio_estimate(int n, std::size_t count,
                                     const energy_scheme& numerator,
                                     const energy_scheme& denominator,
                                     std::size_t instances, std::size_t trials,
                                     std::uint64_t seed, int threads) {
    const paired_means pm = paired_instance_means(n, count, numerator, denominator,
                                                  instances, trials, seed, threads);
    return ratio_from(pm, instances, trials);
}

paired_wkt_stats paired_scheme_stats(int n, std::size_t count,
                                     const energy_scheme& numerator,
                                     const energy_scheme& denominator,
                                     std::size_t instances, std::size_t trials,
                                     std::uint64_t seed, int threads, noise_mode mode) {
    const paired_means pm = paired_instance_means(n, count, numerator, denominator,
                                                  instances, trials, seed, threads, mode);
    paired_wkt_stats out;
    out.overall = ratio_from(pm, instances, trials, /*throw_on_zero=*/false);
    out.numerator_means = pm.num_means;
    out.denominator_means = pm.den_means;
    return out;
}

paired_wkt_stats paired_fixed_instance_stats(const sort_instance& instance,
                                             const energy_scheme& numerator,
                                             const energy_scheme& denominator,
                                             std::size_t trials, std::uint64_t seed,
                                             int threads, noise_mode mode) {
    paired_means pm;
    pm.single_num = expected_wkt(instance, numerator, trials, substream(seed, 1),
                                 threads, mode);
    pm.single_den = expected_wkt(instance, denominator, trials, substream(seed, 2),
                                 threads, mode);
    pm.num_means = {pm.single_num.mean};
    pm.den_means = {pm.single_den.mean};
    paired_wkt_stats out;
    out.overall = ratio_from(pm, 1, trials, /*throw_on_zero=*/false);
    out.numerator_means = pm.num_means;
    out.denominator_means = pm.den_means;
    return out;
}

ratio_estimate alpha_star_estimate(int n, std::size_t count, std::size_t instances,
                                   std::size_t trials, std::uint64_t seed, int threads) {
    return scheme_ratio_estimate(n, count, energy_scheme::oblivious(n),
                                 energy_scheme::aware(n), instances, trials, seed,
                                 threads);
}

classify_result classify_inputs(int n, std::size_t count, std::size_t instances,
                                double c, std::size_t trials, std::uint64_t seed,
                                int threads) {
    if (!(c > 0.0)) throw std::invalid_argument("threshold constant must be positive");
    if (count < 2) throw std::invalid_argument("classification needs at least two elements");
    const paired_means pm =
        paired_instance_means(n, count, energy_scheme::oblivious(n),
                              energy_scheme::aware(n), instances, trials, seed, threads);
    classify_result out;
    out.threshold = c * std::exp2(n / 6.0) /
                    (static_cast<double>(count) * std::log2(static_cast<double>(count)));
    for (std::size_t i = 0; i < instances; ++i) {
        const bool good = pm.den_means[i] == 0.0 ||
                          pm.num_means[i] / pm.den_means[i] >= out.threshold;
        if (good)
            ++out.good;
        else
            ++out.bad;
    }
    out.overall = ratio_from(pm, instances, trials, /*throw_on_zero=*/false);
    return out;
}

std::vector<truncation_row> truncation_sweep(int n, std::size_t count,
                                             std::span<const double> k_values,
                                             std::size_t instances, std::size_t trials,
                                             std::uint64_t seed, int threads) {
    if (count < 2) throw std::invalid_argument("sweep needs at least two elements");
    std::vector<truncation_row> rows;
    rows.reserve(k_values.size());
    for (std::size_t ki = 0; ki < k_values.size(); ++ki) {
        const double k = k_values[ki];
        const energy_scheme trunc = energy_scheme::truncated(n, k);
        // each k gets its own top-level stream so rows are independent
        const std::uint64_t row_seed = substream(seed, 0x10000 + ki);
        const paired_means pm =
            paired_instance_means(n, count, energy_scheme::oblivious(n), trunc, instances,
                                  trials, row_seed, threads);
        truncation_row row;
        row.n = n;
        row.count = count;
        row.k = k;
        row.instances = instances;
        row.trials = trials;
        const ratio_estimate est = ratio_from(pm, instances, trials, /*throw_on_zero=*/false);
        row.mean_wkt_oblivious = est.mean_numerator;
        row.mean_wkt_truncated = est.mean_denominator;
        row.ratio = est.ratio;
        row.ratio_std_error = est.std_error;
        const double threshold =
            std::exp2(n * (k - 5.0 / 3.0) / 6.0) /
            (static_cast<double>(count) * std::log2(static_cast<double>(count)));
        for (std::size_t i = 0; i < instances; ++i) {
            const bool good = pm.den_means[i] == 0.0 ||
                              pm.num_means[i] / pm.den_means[i] >= threshold;
            if (good)
                ++row.good;
            else
                ++row.bad;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string sort_trial_report::to_json() const {
    nlohmann::json doc;
    doc["seed"] = seed;
    doc["scheme"] = scheme;
    doc["output"] = output;
    doc["wkt"] = wkt;
    doc["comparisons"] = comparisons;
    doc["depth"] = depth;
    return doc.dump(2);
}

}
