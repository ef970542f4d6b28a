#pragma once

#include "inexact/function.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace inexact {

// Coefficients of the expansion f(x) = sum_S coef(S) * prod_{i in S} chi_i,
// where chi_i = (-1)^(bit i of x) and the function value is read through the
// signed view (+1 for output 0, -1 otherwise). Subsets are bit masks; bit
// i-1 of the mask marks membership of input bit i.
struct fourier_spectrum {
    int n = 0;
    std::vector<double> coef;  // indexed by mask, size 2^n

    double coefficient(std::uint64_t mask) const;
    double mass() const;  // sum of squared coefficients
    std::string to_json() const;
};

// Walsh-Hadamard transform of the signed view; n <= 16.
fourier_spectrum fourier_transform(const boolean_function& f);

// Reconstructs the signed values from the coefficients (inverse transform).
std::vector<double> inverse_transform(const fourier_spectrum& spectrum);

// sum of coef(S)^2 over subsets S containing bit i
double variance_of_bit(const fourier_spectrum& spectrum, int i);

struct concentration_result {
    double residual = 0.0;  // mass above degree k
    bool concentrated = false;
};

// residual = sum over |S| > k of coef(S)^2; concentrated iff residual < epsilon
concentration_result concentration_check(const fourier_spectrum& spectrum,
                                         double epsilon, int k);

// Smallest k >= 0 with inf_bound * beta1^-k / (beta1 - 1) < epsilon / 2
// (strict). Requires beta1 > 1.
int compute_k(double inf_bound, double beta1, double epsilon);

}
