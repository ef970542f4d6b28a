#include "doctest.h"

#include "inexact/rng.hpp"
#include "inexact/sort_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

using namespace inexact;

namespace {

sort_instance fixed_instance(int n, std::vector<std::uint64_t> elements) {
    sort_instance inst;
    inst.n = n;
    inst.elements = std::move(elements);
    inst.distinct = true;
    return inst;
}

// independent displacement oracle: walk all pairs, add the gap when inverted
std::uint64_t brute_force_wkt(const std::vector<std::uint64_t>& output) {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < output.size(); ++i)
        for (std::size_t j = i + 1; j < output.size(); ++j)
            if (output[i] > output[j]) sum += output[i] - output[j];
    return sum;
}

energy_scheme noiseless(int n) {
    return energy_scheme::custom(std::vector<double>(n, 100.0));
}

}  // namespace

TEST_CASE("random instances are distinct in-range replays of their seed") {
    const auto a = sort_instance::random(10, 100, 42);
    const auto b = sort_instance::random(10, 100, 42);
    const auto c = sort_instance::random(10, 100, 43);
    CHECK(a.elements == b.elements);
    CHECK(a.elements != c.elements);
    CHECK(a.distinct);
    REQUIRE(a.elements.size() == 100);
    for (const auto v : a.elements) CHECK(v < 1024);
    auto sorted = a.elements;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK_THROWS_AS(sort_instance::random(3, 9, 1), std::invalid_argument);
}

TEST_CASE("instances round trip through their file form") {
    const auto a = sort_instance::random(8, 12, 7);
    const char* path = "tmp_instance_roundtrip.json";
    {
        std::ofstream out(path);
        out << a.to_json();
    }
    const auto b = sort_instance::from_json_file(path);
    CHECK(b.n == a.n);
    CHECK(b.elements == a.elements);
    CHECK(b.distinct);
    std::remove(path);
    CHECK_THROWS(sort_instance::from_json_file("missing_instance.json"));
}

TEST_CASE("scheme energies follow their definitions") {
    const auto aware = energy_scheme::aware(4);
    CHECK(aware.energies == std::vector<double>{1.0, 2.0, 3.0, 4.0});
    const auto even = energy_scheme::oblivious(4);
    CHECK(even.energies == std::vector<double>{2.5, 2.5, 2.5, 2.5});
    for (const int n : {3, 8, 15}) {
        double aware_total = 0.0, even_total = 0.0;
        for (const double e : energy_scheme::aware(n).energies) aware_total += e;
        for (const double e : energy_scheme::oblivious(n).energies) even_total += e;
        CHECK(aware_total == doctest::Approx(even_total).epsilon(1e-12));
        CHECK(aware_total == doctest::Approx(n * (n + 1) / 2.0).epsilon(1e-12));
    }
    CHECK(aware.name() == "aware");
    CHECK(even.name() == "oblivious");
}

TEST_CASE("truncation funds the top floor n over k bits") {
    const auto t2 = energy_scheme::truncated(12, 2.0);
    for (int i = 0; i < 6; ++i) CHECK(t2.energies[i] == 0.0);
    for (int i = 6; i < 12; ++i) CHECK(t2.energies[i] == doctest::Approx(12.0));
    const auto t6 = energy_scheme::truncated(12, 6.0);
    for (int i = 0; i < 10; ++i) CHECK(t6.energies[i] == 0.0);
    for (int i = 10; i < 12; ++i) CHECK(t6.energies[i] == doctest::Approx(36.0));
    CHECK(t2.name() == "truncated(2)");
    CHECK(energy_scheme::truncated(12, 2.5).name() == "truncated(2.5)");
    CHECK_THROWS_AS(energy_scheme::truncated(12, 0.5), std::invalid_argument);
}

TEST_CASE("comparisons without noise follow the numeric order") {
    const auto scheme = noiseless(4);
    rng gen(1);
    CHECK(noisy_compare(2, 9, scheme, gen) == ordering::less);
    CHECK(noisy_compare(9, 2, scheme, gen) == ordering::greater);
    CHECK_THROWS_AS(noisy_compare(5, 5, scheme, gen), std::invalid_argument);
}

TEST_CASE("equal noisy copies resolve as less") {
    const auto scheme = energy_scheme::custom({0.5, 0.5});
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        rng probe(seed);
        const auto noisy_a = scheme.plan().scramble(1, probe);
        const auto noisy_b = scheme.plan().scramble(2, probe);
        if (noisy_a != noisy_b) continue;
        rng gen(seed);
        CHECK(noisy_compare(1, 2, scheme, gen) == ordering::less);
        return;
    }
    FAIL("no colliding read in the seed range");
}

TEST_CASE("a certain flip on one operand bit decides the comparison") {
    // bit 1 always misreads, bit 2 never does
    const auto scheme = energy_scheme::custom({0.0, 100.0});
    rng gen(2);
    // 2 = 10 reads as 11, 3 = 11 reads as 10
    CHECK(noisy_compare(2, 3, scheme, gen) == ordering::greater);
    CHECK(noisy_compare(3, 2, scheme, gen) == ordering::less);
}

TEST_CASE("each comparison reads both operands once, low bit first") {
    // matching the reader draw for draw proves the consumption order
    const auto scheme = energy_scheme::custom({0.5, 0.5, 0.5});
    rng gen(5), mirror(5);
    const std::uint64_t a = 0b101, b = 0b010;
    const auto got = noisy_compare(a, b, scheme, gen);
    const std::uint64_t noisy_a = scheme.plan().scramble(a, mirror);
    const std::uint64_t noisy_b = scheme.plan().scramble(b, mirror);
    CHECK(got == (noisy_a <= noisy_b ? ordering::less : ordering::greater));
    CHECK(gen.next() == mirror.next());
}

TEST_CASE("displacement matches the pairwise oracle") {
    const auto inst = fixed_instance(4, {9, 2, 5});
    CHECK(weighted_kendall_tau(std::vector<std::uint64_t>{9, 2, 5}, inst) == 11);
    CHECK(weighted_kendall_tau(std::vector<std::uint64_t>{2, 5, 9}, inst) == 0);
    const auto rev = fixed_instance(2, {1, 2, 3});
    CHECK(weighted_kendall_tau(std::vector<std::uint64_t>{3, 2, 1}, rev) == 4);

    rng gen(77);
    for (int trial = 0; trial < 20; ++trial) {
        auto inst2 = sort_instance::random(12, 30, gen.next());
        auto shuffled = inst2.elements;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[gen.below(i)]);
        CHECK(weighted_kendall_tau(shuffled, inst2) == brute_force_wkt(shuffled));
    }
}

TEST_CASE("displacement rejects outputs that are not a permutation") {
    const auto inst = fixed_instance(4, {1, 2, 3});
    CHECK_THROWS_AS(weighted_kendall_tau(std::vector<std::uint64_t>{1, 2, 4}, inst),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_kendall_tau(std::vector<std::uint64_t>{1, 2}, inst),
                    std::invalid_argument);
}

TEST_CASE("displacement overflow is detected") {
    const std::uint64_t top = (std::uint64_t{1} << 63) - 1;
    const auto inst = fixed_instance(63, {0, 1, top - 1, top});
    CHECK_THROWS_AS(
        weighted_kendall_tau(std::vector<std::uint64_t>{top, top - 1, 1, 0}, inst),
        std::overflow_error);
}

TEST_CASE("noiseless quicksort sorts exactly in both noise modes") {
    const auto inst = sort_instance::random(10, 64, 3);
    for (const auto mode : {noise_mode::fresh, noise_mode::frozen}) {
        const auto report = inexact_quicksort(inst, noiseless(10), 11, mode);
        auto expect = inst.elements;
        std::sort(expect.begin(), expect.end());
        CHECK(report.output == expect);
        CHECK(report.wkt == 0);
        CHECK(report.comparisons >= 63);
        CHECK(report.comparisons <= 64 * 63 / 2);
        CHECK(report.depth >= 1);
    }
}

TEST_CASE("quicksort replays from its seed and differs across seeds") {
    const auto inst = sort_instance::random(8, 32, 5);
    const auto scheme = energy_scheme::oblivious(8);
    const auto a = inexact_quicksort(inst, scheme, 21);
    const auto b = inexact_quicksort(inst, scheme, 21);
    CHECK(a.output == b.output);
    CHECK(a.comparisons == b.comparisons);
    const auto c = inexact_quicksort(inst, scheme, 22);
    CHECK(a.output != c.output);  // 32 noisy elements collide with tiny chance
}

TEST_CASE("trial reports serialize") {
    const auto inst = sort_instance::random(6, 8, 9);
    const auto report = inexact_quicksort(inst, energy_scheme::aware(6), 2);
    const auto doc = nlohmann::json::parse(report.to_json());
    CHECK(doc["scheme"] == "aware");
    CHECK(doc["output"].size() == 8);
    CHECK(doc["wkt"] == report.wkt);
    CHECK(doc["comparisons"] == report.comparisons);
}

TEST_CASE("frozen noise gives an exactly consistent order") {
    // with one corrupted read per element the comparator is a total
    // preorder, so the produced order must be non-decreasing in the proxies
    const auto inst = sort_instance::random(8, 16, 13);
    const auto scheme = energy_scheme::oblivious(8);
    const auto report = inexact_quicksort(inst, scheme, 31, noise_mode::frozen);
    rng mirror(31);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> proxy_of;  // value, proxy
    for (const auto v : inst.elements)
        proxy_of.emplace_back(v, scheme.plan().scramble(v, mirror));
    const auto lookup = [&](std::uint64_t value) {
        for (const auto& [v, p] : proxy_of)
            if (v == value) return p;
        FAIL("output value not in the instance");
        return std::uint64_t{0};
    };
    for (std::size_t i = 0; i + 1 < report.output.size(); ++i)
        CHECK(lookup(report.output[i]) <= lookup(report.output[i + 1]));
}

TEST_CASE("mean displacement replays and is thread-count invariant") {
    const auto inst = sort_instance::random(8, 24, 17);
    const auto scheme = energy_scheme::aware(8);
    const auto one = expected_wkt(inst, scheme, 200, 7, 1);
    const auto many = expected_wkt(inst, scheme, 200, 7, 6);
    CHECK(one.mean == many.mean);
    CHECK(one.std_error == many.std_error);
    CHECK(one.trials == 200);
    CHECK(one.mean > 0.0);
    CHECK(one.std_error > 0.0);
}

TEST_CASE("aware reading beats oblivious reading on random instances") {
    const auto stats = paired_scheme_stats(10, 16, energy_scheme::oblivious(10),
                                           energy_scheme::aware(10), 8, 100, 19, 4);
    REQUIRE(stats.numerator_means.size() == 8);
    CHECK(stats.overall.ratio > 1.0);
    CHECK(stats.overall.mean_numerator > stats.overall.mean_denominator);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(stats.numerator_means[i] > stats.denominator_means[i]);
}

TEST_CASE("paired stats replay and are thread-count invariant") {
    const auto a = paired_scheme_stats(8, 12, energy_scheme::oblivious(8),
                                       energy_scheme::aware(8), 6, 80, 23, 1);
    const auto b = paired_scheme_stats(8, 12, energy_scheme::oblivious(8),
                                       energy_scheme::aware(8), 6, 80, 23, 5);
    CHECK(a.numerator_means == b.numerator_means);
    CHECK(a.denominator_means == b.denominator_means);
    CHECK(a.overall.ratio == b.overall.ratio);
    CHECK(a.overall.std_error == b.overall.std_error);
}

TEST_CASE("fixed instance stats use the instance as given") {
    const auto inst = sort_instance::random(8, 12, 29);
    const auto stats =
        paired_fixed_instance_stats(inst, energy_scheme::oblivious(8),
                                    energy_scheme::aware(8), 100, 37, 2);
    REQUIRE(stats.numerator_means.size() == 1);
    CHECK(stats.overall.instances == 1);
    CHECK(stats.overall.ratio ==
          doctest::Approx(stats.numerator_means[0] / stats.denominator_means[0]));
}

TEST_CASE("misread probability of one aware comparison shrinks with the gap") {
    // the chance the comparison misorders a pair, times the gap, stays small;
    // spot check a close pair and a far pair at width 12
    const int n = 12;
    const auto scheme = energy_scheme::aware(n);
    const auto misread_rate = [&](std::uint64_t a, std::uint64_t b, int reads) {
        rng gen(41);
        int wrong = 0;
        for (int i = 0; i < reads; ++i)
            wrong += noisy_compare(a, b, scheme, gen) == ordering::greater;
        return double(wrong) / reads;
    };
    const std::uint64_t far_a = 100, far_b = 3600;
    CHECK(misread_rate(far_a, far_b, 20000) * double(far_b - far_a) < 8.0);
    const std::uint64_t near_a = 2047, near_b = 2048;  // all bits differ
    CHECK(misread_rate(near_a, near_b, 20000) * double(near_b - near_a) < 8.0);
}

TEST_CASE("instance classification counts both sides and checks the threshold") {
    const auto result = classify_inputs(12, 8, 30, 1.0, 60, 43, 4);
    CHECK(result.good + result.bad == 30);
    const double expect = std::exp2(12.0 / 6.0) / (8.0 * std::log2(8.0));
    CHECK(result.threshold == doctest::Approx(expect).epsilon(1e-12));
    // aware reading dominates at this width, so most instances pass
    CHECK(result.good >= 24);
}

TEST_CASE("truncation sweep orders mild against harsh truncation") {
    const std::vector<double> ks{2.0, 6.0};
    const auto rows = truncation_sweep(12, 8, ks, 6, 60, 47, 4);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].k == 2.0);
    CHECK(rows[1].k == 6.0);
    for (const auto& row : rows) {
        CHECK(row.n == 12);
        CHECK(row.count == 8);
        CHECK(row.instances == 6);
        CHECK(row.good + row.bad == 6);
        CHECK(row.mean_wkt_oblivious > 0.0);
    }
    // funding six bits fully beats funding two bits at this width
    CHECK(rows[0].ratio > rows[1].ratio);
    CHECK(rows[0].ratio > 1.0);   // mild truncation helps
    CHECK(rows[1].ratio < 1.0);   // harsh truncation hurts
}

TEST_CASE("schemes of the wrong width are rejected") {
    const auto inst = sort_instance::random(8, 8, 51);
    CHECK_THROWS_AS(inexact_quicksort(inst, energy_scheme::aware(6), 1),
                    std::invalid_argument);
    rng gen(1);
    CHECK_THROWS_AS(noisy_compare(1, 300, energy_scheme::aware(8), gen),
                    std::invalid_argument);
}
