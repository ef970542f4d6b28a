#pragma once

#include "inexact/function.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace inexact {

struct labeled_example {
    std::uint64_t x = 0;  // input bits
    int label = 0;        // +1 or -1
};

// Truncated polynomial learned from examples: estimated coefficients for
// every subset of size at most `degree_cap`.
struct learned_hypothesis {
    int n = 0;
    int degree_cap = 0;
    // (mask, coefficient) ordered by subset size, then mask value
    std::vector<std::pair<std::uint64_t, double>> coefficients;

    // sign of the truncated polynomial at x; exact zero maps to +1
    int predict(std::uint64_t x) const;
};

// Estimates each coefficient as the mean of label * chi_S(x) over the
// examples. chi_S(x) = (-1)^(popcount of S & x).
learned_hypothesis low_degree_learn(std::span<const labeled_example> examples,
                                    int n, int degree_cap);

struct learning_run {
    std::uint64_t m = 0;  // training examples
    int degree_cap = 0;
    double train_error = 0.0;
    double test_error = 0.0;
    std::uint64_t seed = 0;
};

// Samples m labeled examples of f (stream substream(seed, 0)), learns at the
// degree cap, and scores on `test_count` fresh inputs (stream
// substream(seed, 1)). Labels use the signed view of f.
learning_run learning_experiment(const boolean_function& f, int degree_cap,
                                 std::uint64_t m, std::uint64_t test_count,
                                 std::uint64_t seed);

}
