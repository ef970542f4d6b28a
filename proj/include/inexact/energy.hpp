#pragma once

#include "inexact/influence.hpp"

#include <span>
#include <string>
#include <vector>

namespace inexact {

// Per-bit energies. Entries are non-negative and sum to at most the budget
// (within 1e-9); validate() enforces both.
struct energy_vector {
    std::vector<double> entries;
    double budget = 0.0;

    void validate() const;
};

// Per-bit flip probabilities p_i = 2^-e_i, each in (0, 1].
struct flip_probability_vector {
    std::vector<double> entries;
};

flip_probability_vector energy_to_probs(const energy_vector& e);
std::vector<double> probs_from_energies(std::span<const double> energies);

// Expected damage sum_i mean_i * p_i of one noisy read.
double total_impact(const influence_profile& profile, const flip_probability_vector& p);

enum class allocation_kind { oblivious, aware_optimal, custom };

struct allocation_result {
    energy_vector energy;
    flip_probability_vector probs;
    double total_impact = 0.0;
    allocation_kind kind = allocation_kind::custom;
    std::vector<int> saturated;  // 1-based bits pinned at e = 0
    std::string note;            // diagnostics: clamping, zero-influence bits

    bool clamped() const noexcept { return !saturated.empty(); }
    std::string to_json() const;
};

// Budget split evenly: e_i = budget / n for every bit.
allocation_result oblivious_allocation(const influence_profile& profile, double budget);

// Minimizes total impact subject to sum e_i <= budget. Unclamped solution:
// p_i = (prod_j mean_j * 2^-budget)^(1/n) / mean_i, i.e. mean_i * p_i equal
// across bits. Bits whose closed-form p_i would exceed 1 are pinned at
// e_i = 0 and the remainder is re-solved (repeated until feasible).
// Zero-influence bits never receive energy. An all-zero profile returns the
// all-zero allocation with a diagnostic note instead of failing.
allocation_result optimal_allocation(const influence_profile& profile, double budget);

// total_impact(oblivious) / total_impact(optimal) at the same budget.
double alpha(const influence_profile& profile, double budget);

// (beta^n - 1) / (n * beta^((n-1)/2) * (beta - 1)) for constant ratio
// profiles with beta > 1; equals the AM/GM ratio of the influence means.
double alpha_closed_form(double beta, int n);

}
