#include "inexact/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace inexact {

void energy_vector::validate() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!(entries[i] >= 0.0))
            throw std::invalid_argument("energy at bit " + std::to_string(i + 1) +
                                        " is negative");
        sum += entries[i];
    }
    if (sum > budget + 1e-9)
        throw std::invalid_argument("energies sum to " + std::to_string(sum) +
                                    ", above the budget " + std::to_string(budget));
}

std::vector<double> probs_from_energies(std::span<const double> energies) {
    std::vector<double> p(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (!(energies[i] >= 0.0))
            throw std::invalid_argument("energy at bit " + std::to_string(i + 1) +
                                        " is negative");
        p[i] = std::exp2(-energies[i]);
    }
    return p;
}

flip_probability_vector energy_to_probs(const energy_vector& e) {
    e.validate();
    return flip_probability_vector{probs_from_energies(e.entries)};
}

double total_impact(const influence_profile& profile, const flip_probability_vector& p) {
    if (p.entries.size() != profile.means.size())
        throw std::invalid_argument("impact needs matching lengths: profile has " +
                                    std::to_string(profile.means.size()) +
                                    " bits, probabilities have " +
                                    std::to_string(p.entries.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < p.entries.size(); ++i)
        sum += profile.means[i] * p.entries[i];
    return sum;
}

allocation_result oblivious_allocation(const influence_profile& profile, double budget) {
    if (!(budget >= 0.0)) throw std::invalid_argument("budget must be non-negative");
    const int n = profile.n;
    if (n < 1) throw std::invalid_argument("profile is empty");
    allocation_result out;
    out.kind = allocation_kind::oblivious;
    out.energy.budget = budget;
    out.energy.entries.assign(n, budget / n);
    out.probs.entries.assign(n, std::exp2(-budget / n));
    out.total_impact = total_impact(profile, out.probs);
    return out;
}

allocation_result optimal_allocation(const influence_profile& profile, double budget) {
    if (!(budget >= 0.0)) throw std::invalid_argument("budget must be non-negative");
    const int n = profile.n;
    if (n < 1) throw std::invalid_argument("profile is empty");

    allocation_result out;
    out.kind = allocation_kind::aware_optimal;
    out.energy.budget = budget;
    out.energy.entries.assign(n, 0.0);
    out.probs.entries.assign(n, 1.0);

    std::vector<int> funded;  // 0-based
    for (int i = 0; i < n; ++i)
        if (profile.means[i] > 0.0) funded.push_back(i);

    if (funded.empty()) {
        out.note = "all influence means are zero; impact is identically zero";
        out.saturated.resize(n);
        for (int i = 0; i < n; ++i) out.saturated[i] = i + 1;
        out.total_impact = 0.0;
        return out;
    }
    const bool had_zero_bits = static_cast<int>(funded.size()) < n;

    // water-filling: drop bits whose equalizing probability exceeds 1, then
    // re-solve on the rest with the full budget
    bool dropped_by_clamp = false;
    for (;;) {
        const std::size_t m = funded.size();
        double log_sum = 0.0;
        for (const int i : funded) log_sum += std::log2(profile.means[i]);
        const double log_k = (log_sum - budget) / static_cast<double>(m);

        std::vector<int> keep;
        keep.reserve(m);
        for (const int i : funded) {
            const double p = std::exp2(log_k - std::log2(profile.means[i]));
            if (p > 1.0) continue;
            keep.push_back(i);
        }
        if (keep.size() == m) {
            for (const int i : funded) {
                const double p = std::exp2(log_k - std::log2(profile.means[i]));
                out.probs.entries[i] = p;
                out.energy.entries[i] = std::max(0.0, -std::log2(p));
            }
            break;
        }
        dropped_by_clamp = true;
        if (keep.empty()) {
            // only reachable through rounding at budget 0; spend nothing
            funded.clear();
            break;
        }
        funded = std::move(keep);
    }

    for (int i = 0; i < n; ++i)
        if (out.energy.entries[i] == 0.0 && out.probs.entries[i] == 1.0 &&
            std::find(funded.begin(), funded.end(), i) == funded.end())
            out.saturated.push_back(i + 1);
    if (dropped_by_clamp)
        out.note = "closed form exceeded p = 1 on some bits; they were pinned at e = 0";
    else if (had_zero_bits)
        out.note = "zero-influence bits received no energy";
    out.total_impact = total_impact(profile, out.probs);
    return out;
}

double alpha(const influence_profile& profile, double budget) {
    const double optimal = optimal_allocation(profile, budget).total_impact;
    if (optimal == 0.0)
        throw std::domain_error("alpha undefined: optimal impact is zero "
                                "(all influence means are zero)");
    return oblivious_allocation(profile, budget).total_impact / optimal;
}

double alpha_closed_form(double beta, int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (!(beta > 1.0))
        throw std::domain_error("closed-form alpha needs beta > 1, got " +
                                std::to_string(beta));
    const double num = std::pow(beta, n) - 1.0;
    const double den = n * std::pow(beta, (n - 1) / 2.0) * (beta - 1.0);
    return num / den;
}

static const char* kind_name(allocation_kind k) {
    switch (k) {
        case allocation_kind::oblivious: return "oblivious";
        case allocation_kind::aware_optimal: return "aware-optimal";
        default: return "custom";
    }
}

std::string allocation_result::to_json() const {
    nlohmann::json doc;
    doc["kind"] = kind_name(kind);
    doc["energy"] = energy.entries;
    doc["probs"] = probs.entries;
    doc["total_impact"] = total_impact;
    doc["saturated"] = saturated;
    doc["budget"] = energy.budget;
    if (!note.empty()) doc["note"] = note;
    return doc.dump(2);
}

}
