#pragma once

#include "inexact/bitvec.hpp"
#include "inexact/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace inexact {

// Precomputed per-bit flip test. A read of bit i consumes exactly one raw
// draw u and flips the bit iff u < threshold[i], where threshold[i] is
// p_i * 2^64 (so probabilities are quantized to multiples of 2^-64).
// p_i == 1 is kept exact: the bit always flips. Bits are read in order,
// bit 1 (least significant) first.
class flip_plan {
public:
    explicit flip_plan(std::span<const double> probs);

    int width() const noexcept { return static_cast<int>(thresholds_.size()); }

    std::uint64_t scramble(std::uint64_t bits, rng& gen) const {
        std::uint64_t flips = always_mask_;
        for (std::size_t i = 0; i < thresholds_.size(); ++i) {
            const std::uint64_t u = gen.next();
            flips |= static_cast<std::uint64_t>(u < thresholds_[i]) << i;
        }
        return bits ^ flips;
    }

private:
    std::vector<std::uint64_t> thresholds_;  // 0 for the always-flip bits
    std::uint64_t always_mask_ = 0;
};

// One noisy read of x: bit i flips independently with probability probs[i-1].
bitvec apply_reader(const bitvec& x, std::span<const double> probs, rng& gen);
bitvec apply_reader(const bitvec& x, std::span<const double> probs, std::uint64_t seed);

}
