#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace inexact {

// mask of the low n bits, 1 <= n <= 63
inline std::uint64_t width_mask(int n) {
    if (n < 1 || n > 63)
        throw std::invalid_argument("bit width must be in [1, 63], got " + std::to_string(n));
    return (std::uint64_t{1} << n) - 1;
}

// Fixed-width bit string interpreted as an unsigned integer.
// Bit indices are 1-based; bit 1 is the least significant bit.
class bitvec {
public:
    bitvec(int width, std::uint64_t value) : width_(width), bits_(value) {
        if (value > width_mask(width))
            throw std::invalid_argument("value " + std::to_string(value) +
                                        " does not fit in " + std::to_string(width) + " bits");
    }

    int width() const noexcept { return width_; }
    std::uint64_t value() const noexcept { return bits_; }

    bool bit(int i) const {
        check_index(i);
        return (bits_ >> (i - 1)) & 1u;
    }

    // copy with bit i toggled
    bitvec flipped(int i) const {
        check_index(i);
        return bitvec(width_, bits_ ^ (std::uint64_t{1} << (i - 1)));
    }

    friend bool operator==(const bitvec&, const bitvec&) = default;

private:
    void check_index(int i) const {
        if (i < 1 || i > width_)
            throw std::out_of_range("bit index " + std::to_string(i) +
                                    " outside [1, " + std::to_string(width_) + "]");
    }

    int width_;
    std::uint64_t bits_;
};

}
