#include "inexact/learning.hpp"

#include "inexact/rng.hpp"

#include <bit>
#include <stdexcept>

namespace inexact {

static std::vector<std::uint64_t> subsets_up_to(int n, int degree_cap) {
    std::vector<std::uint64_t> masks;
    const std::uint64_t size = std::uint64_t{1} << n;
    for (int card = 0; card <= degree_cap; ++card)
        for (std::uint64_t mask = 0; mask < size; ++mask)
            if (std::popcount(mask) == card) masks.push_back(mask);
    return masks;
}

learned_hypothesis low_degree_learn(std::span<const labeled_example> examples,
                                    int n, int degree_cap) {
    width_mask(n);
    if (degree_cap < 0 || degree_cap > n)
        throw std::invalid_argument("degree cap " + std::to_string(degree_cap) +
                                    " outside [0, " + std::to_string(n) + "]");
    if (examples.empty()) throw std::invalid_argument("learning needs at least one example");
    const std::uint64_t mask_all = width_mask(n);
    for (const auto& ex : examples) {
        if (ex.x > mask_all)
            throw std::invalid_argument("example input does not fit " + std::to_string(n) +
                                        " bits");
        if (ex.label != 1 && ex.label != -1)
            throw std::invalid_argument("labels must be +1 or -1");
    }

    const auto masks = subsets_up_to(n, degree_cap);
    // integer counts keep coefficient estimates exact for any partitioning
    std::vector<std::int64_t> counts(masks.size(), 0);
    for (const auto& ex : examples)
        for (std::size_t s = 0; s < masks.size(); ++s) {
            const int chi = (std::popcount(masks[s] & ex.x) & 1) ? -1 : 1;
            counts[s] += ex.label * chi;
        }

    learned_hypothesis h;
    h.n = n;
    h.degree_cap = degree_cap;
    h.coefficients.reserve(masks.size());
    const double m = static_cast<double>(examples.size());
    for (std::size_t s = 0; s < masks.size(); ++s)
        h.coefficients.emplace_back(masks[s], static_cast<double>(counts[s]) / m);
    return h;
}

int learned_hypothesis::predict(std::uint64_t x) const {
    double value = 0.0;
    for (const auto& [mask, coef] : coefficients) {
        const int chi = (std::popcount(mask & x) & 1) ? -1 : 1;
        value += coef * chi;
    }
    return value >= 0.0 ? 1 : -1;
}

learning_run learning_experiment(const boolean_function& f, int degree_cap,
                                 std::uint64_t m, std::uint64_t test_count,
                                 std::uint64_t seed) {
    if (m == 0) throw std::invalid_argument("learning needs at least one training example");
    if (test_count == 0) throw std::invalid_argument("scoring needs at least one test input");
    const int n = f.arity();
    const std::uint64_t mask = width_mask(n);

    std::vector<labeled_example> train(m);
    {
        rng gen(substream(seed, 0));
        for (auto& ex : train) {
            ex.x = gen.next() & mask;
            ex.label = f.signed_value(ex.x);
        }
    }
    const learned_hypothesis h = low_degree_learn(train, n, degree_cap);

    std::uint64_t train_wrong = 0;
    for (const auto& ex : train)
        if (h.predict(ex.x) != ex.label) ++train_wrong;

    std::uint64_t test_wrong = 0;
    {
        rng gen(substream(seed, 1));
        for (std::uint64_t t = 0; t < test_count; ++t) {
            const std::uint64_t x = gen.next() & mask;
            if (h.predict(x) != f.signed_value(x)) ++test_wrong;
        }
    }

    learning_run out;
    out.m = m;
    out.degree_cap = degree_cap;
    out.train_error = static_cast<double>(train_wrong) / static_cast<double>(m);
    out.test_error = static_cast<double>(test_wrong) / static_cast<double>(test_count);
    out.seed = seed;
    return out;
}

}
