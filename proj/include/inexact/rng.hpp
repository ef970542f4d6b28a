#pragma once

#include <cstdint>

namespace inexact {

// Single generator for the whole project: xoshiro256++ 1.0, seeded through
// splitmix64. The algorithm is fixed so that every report is reproducible
// from a 64-bit seed, bit for bit, on any platform and thread count.
class rng {
public:
    explicit rng(std::uint64_t seed) noexcept;

    // next raw 64-bit output
    std::uint64_t next() noexcept;

    // uniform double in [0, 1), 53 significant bits
    double uniform01() noexcept;

    // uniform integer in [0, bound), bound >= 1; unbiased via rejection
    std::uint64_t below(std::uint64_t bound) noexcept;

private:
    std::uint64_t s_[4];
};

// splitmix64 output for state x. Used as the substream mixing function and
// for expanding a seed into generator state.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Substream convention used everywhere: stream `index` of `seed` is the
// generator seeded with seed ^ mix64(index). Nested derivations are allowed
// (instances derive trial streams the same way).
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index) noexcept {
    return seed ^ mix64(index);
}

}
