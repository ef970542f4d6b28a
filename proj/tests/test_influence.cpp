#include "doctest.h"

#include "inexact/function.hpp"
#include "inexact/influence.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

using namespace inexact;

namespace {

// independent brute-force mean influence for small n
std::vector<double> brute_force_means(const boolean_function& f) {
    const int n = f.arity();
    std::vector<double> means(n, 0.0);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (int i = 1; i <= n; ++i) {
        double sum = 0.0;
        for (std::uint64_t x = 0; x < total; ++x) {
            const std::uint64_t a = f.eval_bits(x);
            const std::uint64_t b = f.eval_bits(x ^ (std::uint64_t{1} << (i - 1)));
            sum += a > b ? double(a - b) : double(b - a);
        }
        means[i - 1] = sum / double(total);
    }
    return means;
}

}  // namespace

TEST_CASE("pointwise influence is the absolute output difference") {
    const auto be = make_function("be", 3);
    CHECK(influence_at(be, bitvec(3, 0), 1) == 1);
    CHECK(influence_at(be, bitvec(3, 0), 2) == 2);
    CHECK(influence_at(be, bitvec(3, 0), 3) == 4);
    CHECK(influence_at(be, bitvec(3, 7), 3) == 4);
    const auto maj = make_function("majority", 3);
    CHECK(influence_at(maj, bitvec(3, 0b011), 1) == 1);  // 2 ones -> 1 one crosses
    CHECK(influence_at(maj, bitvec(3, 0b000), 1) == 0);
}

TEST_CASE("exact influence of the identity doubles per bit") {
    const auto profile = exact_influence(make_function("be", 3));
    REQUIRE(profile.n == 3);
    CHECK(profile.means[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(profile.means[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(profile.means[2] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(profile.method == influence_profile::method_kind::exact);
    CHECK(profile.std_devs.empty());
}

TEST_CASE("exact influence of symmetric functions") {
    const auto xr = exact_influence(make_function("xor", 4));
    for (const double m : xr.means) CHECK(m == doctest::Approx(1.0).epsilon(1e-12));

    const auto maj = exact_influence(make_function("majority", 3));
    for (const double m : maj.means) CHECK(m == doctest::Approx(0.5).epsilon(1e-12));

    // every bit of or/and matters only at one neighboring weight
    const auto any = exact_influence(make_function("or", 2));
    for (const double m : any.means) CHECK(m == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("exact influence matches brute force on assorted functions") {
    for (const char* name : {"be", "xor", "or", "and", "majority", "threshold:2"}) {
        const auto f = make_function(name, 5);
        const auto profile = exact_influence(f);
        const auto expect = brute_force_means(f);
        for (int i = 0; i < 5; ++i)
            CHECK(profile.means[i] == doctest::Approx(expect[i]).epsilon(1e-12));
    }
}

TEST_CASE("a dictator bit carries all the influence") {
    // f depends on bit 1 only
    const auto f = boolean_function::from_truth_table("dict", 2, {0, 1, 0, 1});
    const auto profile = exact_influence(f);
    CHECK(profile.means[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(profile.means[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sampled influence converges to the exact means") {
    const auto f = make_function("majority", 9);
    const auto exact = exact_influence(f);
    const std::uint64_t samples = 200000;
    const auto mc = sampled_influence(f, samples, 71, 4);
    REQUIRE(mc.method == influence_profile::method_kind::monte_carlo);
    REQUIRE(mc.samples == samples);
    for (int i = 0; i < 9; ++i) {
        const double sigma = mc.std_devs[i] / std::sqrt(double(samples));
        CHECK(std::fabs(mc.means[i] - exact.means[i]) < 4.5 * sigma + 1e-12);
        CHECK(mc.std_devs[i] > 0.0);
    }
}

TEST_CASE("sampled influence is identical for every thread count") {
    const auto f = make_function("majority", 7);
    const auto one = sampled_influence(f, 30000, 5, 1);
    const auto many = sampled_influence(f, 30000, 5, 8);
    CHECK(one.means == many.means);
    CHECK(one.std_devs == many.std_devs);
}

TEST_CASE("influence ratios detect a common factor") {
    const auto doubling = beta_profile(exact_influence(make_function("be", 4)));
    REQUIRE(doubling.ratios.size() == 3);
    for (const double r : doubling.ratios) CHECK(r == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(doubling.common.has_value());
    CHECK(*doubling.common == doctest::Approx(2.0).epsilon(1e-12));

    const auto flat = beta_profile(exact_influence(make_function("xor", 4)));
    REQUIRE(flat.common.has_value());
    CHECK(*flat.common == doctest::Approx(1.0).epsilon(1e-12));

    influence_profile uneven;
    uneven.n = 3;
    uneven.means = {1.0, 2.0, 5.0};
    CHECK_FALSE(beta_profile(uneven).common.has_value());
}

TEST_CASE("ratios are undefined when a mean is zero") {
    influence_profile dead;
    dead.n = 2;
    dead.means = {0.0, 1.0};
    CHECK_THROWS_AS(beta_profile(dead), std::domain_error);
}

TEST_CASE("exact influence rejects oversized enumerations") {
    const boolean_function wide("wide", 21, [](std::uint64_t x) { return x & 1; });
    CHECK_THROWS_AS(exact_influence(wide), std::invalid_argument);
}
