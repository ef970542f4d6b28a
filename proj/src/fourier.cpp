#include "inexact/fourier.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace inexact {

static void walsh_hadamard(std::vector<double>& a) {
    const std::size_t size = a.size();
    for (std::size_t len = 1; len < size; len <<= 1)
        for (std::size_t i = 0; i < size; i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                const double u = a[j];
                const double v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
}

fourier_spectrum fourier_transform(const boolean_function& f) {
    const int n = f.arity();
    if (n > 16)
        throw std::invalid_argument("spectrum needs 2^n coefficients and is limited to "
                                    "n <= 16; got n = " + std::to_string(n));
    const std::size_t size = std::size_t{1} << n;
    fourier_spectrum out;
    out.n = n;
    out.coef.resize(size);
    for (std::size_t x = 0; x < size; ++x)
        out.coef[x] = static_cast<double>(f.signed_value(x));
    walsh_hadamard(out.coef);
    const double scale = 1.0 / static_cast<double>(size);
    for (double& c : out.coef) c *= scale;
    return out;
}

std::vector<double> inverse_transform(const fourier_spectrum& spectrum) {
    std::vector<double> values = spectrum.coef;
    walsh_hadamard(values);
    return values;
}

double fourier_spectrum::coefficient(std::uint64_t mask) const {
    if (mask >= coef.size())
        throw std::out_of_range("subset mask " + std::to_string(mask) +
                                " outside 2^" + std::to_string(n) + " range");
    return coef[mask];
}

double fourier_spectrum::mass() const {
    double sum = 0.0;
    for (const double c : coef) sum += c * c;
    return sum;
}

std::string fourier_spectrum::to_json() const {
    nlohmann::json doc = nlohmann::json::array();
    for (std::size_t mask = 0; mask < coef.size(); ++mask)
        doc.push_back({{"mask", mask}, {"coef", coef[mask]}});
    return doc.dump(2);
}

double variance_of_bit(const fourier_spectrum& spectrum, int i) {
    if (i < 1 || i > spectrum.n)
        throw std::out_of_range("bit index " + std::to_string(i) + " outside [1, " +
                                std::to_string(spectrum.n) + "]");
    const std::uint64_t bit = std::uint64_t{1} << (i - 1);
    double sum = 0.0;
    for (std::size_t mask = 0; mask < spectrum.coef.size(); ++mask)
        if (mask & bit) sum += spectrum.coef[mask] * spectrum.coef[mask];
    return sum;
}

concentration_result concentration_check(const fourier_spectrum& spectrum,
                                         double epsilon, int k) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (k < 0 || k > spectrum.n)
        throw std::invalid_argument("degree bound " + std::to_string(k) +
                                    " outside [0, " + std::to_string(spectrum.n) + "]");
    concentration_result out;
    for (std::size_t mask = 0; mask < spectrum.coef.size(); ++mask)
        if (std::popcount(mask) > k) out.residual += spectrum.coef[mask] * spectrum.coef[mask];
    out.concentrated = out.residual < epsilon;
    return out;
}

int compute_k(double inf_bound, double beta1, double epsilon) {
    if (!(inf_bound > 0.0)) throw std::invalid_argument("influence bound must be positive");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(beta1 > 1.0))
        throw std::domain_error("degree bound needs beta1 > 1, got " + std::to_string(beta1));

    const auto tail = [&](long long k) {
        return inf_bound * std::pow(beta1, -static_cast<double>(k)) / (beta1 - 1.0);
    };
    const double half = epsilon / 2.0;
    if (tail(0) < half) return 0;

    // analytic guess, then walk to the smallest k that satisfies the strict bound
    const double guess = std::log(inf_bound / ((beta1 - 1.0) * half)) / std::log(beta1);
    long long k = std::max(0ll, static_cast<long long>(std::floor(guess)) - 2);
    while (!(tail(k) < half)) {
        ++k;
        if (k >= (1ll << 31))
            throw std::domain_error("degree bound does not stabilize below 2^31");
    }
    // the guess may land past the true minimum; back down while it still holds
    while (k > 0 && tail(k - 1) < half) --k;
    return static_cast<int>(k);
}

}
