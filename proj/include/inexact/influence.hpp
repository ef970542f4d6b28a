#pragma once

#include "inexact/bitvec.hpp"
#include "inexact/function.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace inexact {

// Per-bit mean influence E[|f(x) - f(x with bit i flipped)|] over uniform x.
struct influence_profile {
    enum class method_kind { exact, monte_carlo };

    int n = 0;
    std::vector<double> means;     // index 0 holds bit 1
    std::vector<double> std_devs;  // per-bit sample std; empty in exact mode
    method_kind method = method_kind::exact;
    std::uint64_t samples = 0;     // 0 in exact mode
    std::optional<std::uint64_t> seed;
};

// |f(x) - f(x with bit i flipped)| at a single point
std::uint64_t influence_at(const boolean_function& f, const bitvec& x, int i);

// Full enumeration over all 2^n inputs; allowed for n <= 20.
influence_profile exact_influence(const boolean_function& f);

// Empirical means over `samples` uniform inputs. Sample s draws its input
// from the generator seeded with substream(seed, s), so the result does not
// depend on how samples are split across threads.
influence_profile sampled_influence(const boolean_function& f, std::uint64_t samples,
                                    std::uint64_t seed, int threads = 1);

// Consecutive-bit ratios means[i+1] / means[i].
struct beta_profile_result {
    std::vector<double> ratios;     // n-1 entries
    std::optional<double> common;   // set when all ratios agree within 1e-9
};

beta_profile_result beta_profile(const influence_profile& profile);

}
