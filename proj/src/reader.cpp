#include "inexact/reader.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace inexact {

flip_plan::flip_plan(std::span<const double> probs) {
    if (probs.empty() || probs.size() > 63)
        throw std::invalid_argument("flip plan needs between 1 and 63 probabilities");
    thresholds_.resize(probs.size(), 0);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double p = probs[i];
        if (!(p >= 0.0) || p > 1.0)
            throw std::invalid_argument("flip probability " + std::to_string(p) +
                                        " at bit " + std::to_string(i + 1) +
                                        " outside [0, 1]");
        const double scaled = p * 0x1.0p64;
        if (scaled >= 0x1.0p64) {
            always_mask_ |= std::uint64_t{1} << i;
        } else {
            thresholds_[i] = static_cast<std::uint64_t>(scaled);
        }
    }
}

bitvec apply_reader(const bitvec& x, std::span<const double> probs, rng& gen) {
    if (static_cast<int>(probs.size()) != x.width())
        throw std::invalid_argument("reader got " + std::to_string(probs.size()) +
                                    " probabilities for a width-" +
                                    std::to_string(x.width()) + " input");
    const flip_plan plan(probs);
    return bitvec(x.width(), plan.scramble(x.value(), gen));
}

bitvec apply_reader(const bitvec& x, std::span<const double> probs, std::uint64_t seed) {
    rng gen(seed);
    return apply_reader(x, probs, gen);
}

}
