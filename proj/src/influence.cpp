#include "inexact/influence.hpp"

#include "inexact/parallel.hpp"
#include "inexact/rng.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace inexact {

using wide_uint = unsigned __int128;

static std::uint64_t abs_diff(std::uint64_t a, std::uint64_t b) {
    return a > b ? a - b : b - a;
}

std::uint64_t influence_at(const boolean_function& f, const bitvec& x, int i) {
    return abs_diff(f(x), f(x.flipped(i)));
}

influence_profile exact_influence(const boolean_function& f) {
    const int n = f.arity();
    if (n > 20)
        throw std::invalid_argument("exact influence enumerates 2^n inputs and is limited to "
                                    "n <= 20; got n = " + std::to_string(n));
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<std::uint64_t> table(size);
    for (std::uint64_t x = 0; x < size; ++x) table[x] = f.eval_bits(x);

    influence_profile out;
    out.n = n;
    out.method = influence_profile::method_kind::exact;
    out.means.resize(n);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        wide_uint sum = 0;
        for (std::uint64_t x = 0; x < size; ++x)
            sum += abs_diff(table[x], table[x ^ bit]);
        out.means[i] = static_cast<double>(sum) / static_cast<double>(size);
    }
    return out;
}

influence_profile sampled_influence(const boolean_function& f, std::uint64_t samples,
                                    std::uint64_t seed, int threads) {
    if (samples == 0) throw std::invalid_argument("sampled influence needs at least one sample");
    const int n = f.arity();
    const std::uint64_t mask = width_mask(n);

    // integer accumulators keep the reduction exact, so the outcome is the
    // same for every thread count and chunking
    const int workers = resolve_threads(threads);
    std::vector<std::vector<wide_uint>> sums(workers, std::vector<wide_uint>(n, 0));
    std::vector<std::vector<wide_uint>> squares(workers, std::vector<wide_uint>(n, 0));

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t lo = samples * static_cast<std::uint64_t>(w) / workers;
        const std::uint64_t hi = samples * static_cast<std::uint64_t>(w + 1) / workers;
        pool.emplace_back([&, w, lo, hi] {
            auto& sum = sums[w];
            auto& sq = squares[w];
            for (std::uint64_t s = lo; s < hi; ++s) {
                rng gen(substream(seed, s));
                const std::uint64_t x = gen.next() & mask;
                const std::uint64_t fx = f.eval_bits(x);
                for (int i = 0; i < n; ++i) {
                    const std::uint64_t d =
                        abs_diff(fx, f.eval_bits(x ^ (std::uint64_t{1} << i)));
                    sum[i] += d;
                    sq[i] += static_cast<wide_uint>(d) * d;
                }
            }
        });
    }
    for (auto& t : pool) t.join();

    influence_profile out;
    out.n = n;
    out.method = influence_profile::method_kind::monte_carlo;
    out.samples = samples;
    out.seed = seed;
    out.means.resize(n);
    out.std_devs.resize(n);
    for (int i = 0; i < n; ++i) {
        wide_uint sum = 0, sq = 0;
        for (int w = 0; w < workers; ++w) {
            sum += sums[w][i];
            sq += squares[w][i];
        }
        const double mean = static_cast<double>(sum) / static_cast<double>(samples);
        out.means[i] = mean;
        if (samples > 1) {
            const long double num =
                static_cast<long double>(sq) - static_cast<long double>(sum) * mean;
            const long double var = num / static_cast<long double>(samples - 1);
            out.std_devs[i] = var > 0 ? std::sqrt(static_cast<double>(var)) : 0.0;
        } else {
            out.std_devs[i] = 0.0;
        }
    }
    return out;
}

beta_profile_result beta_profile(const influence_profile& profile) {
    if (profile.n < 2)
        throw std::invalid_argument("beta profile needs at least two bits");
    std::string zeros;
    for (int i = 0; i < profile.n; ++i) {
        if (profile.means[i] == 0.0) {
            if (!zeros.empty()) zeros += ", ";
            zeros += std::to_string(i + 1);
        }
    }
    if (!zeros.empty())
        throw std::domain_error("beta profile undefined: zero influence at bit(s) " + zeros);

    beta_profile_result out;
    out.ratios.resize(profile.n - 1);
    for (int i = 0; i + 1 < profile.n; ++i)
        out.ratios[i] = profile.means[i + 1] / profile.means[i];
    bool same = true;
    for (const double r : out.ratios)
        if (std::fabs(r - out.ratios.front()) > 1e-9) { same = false; break; }
    if (same) out.common = out.ratios.front();
    return out;
}

}
