#pragma once

#include "inexact/bitvec.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace inexact {

// A total function f : {0,1}^n -> N with a stable name. Evaluation is
// deterministic; inputs are the integer encodings of bit strings.
class boolean_function {
public:
    boolean_function(std::string name, int arity,
                     std::function<std::uint64_t(std::uint64_t)> eval);

    const std::string& name() const noexcept { return name_; }
    int arity() const noexcept { return arity_; }

    std::uint64_t operator()(const bitvec& x) const;

    // unchecked fast path; `bits` must already fit the arity
    std::uint64_t eval_bits(std::uint64_t bits) const { return eval_(bits); }

    // View on {-1,+1}: +1 when f(x) == 0, -1 otherwise. Input bits map to
    // characters via b -> (-1)^b, which is handled by the spectral code.
    int signed_value(std::uint64_t bits) const { return eval_(bits) == 0 ? 1 : -1; }

    // table must hold exactly 2^n outputs, indexed by input encoding
    static boolean_function from_truth_table(std::string name, int n,
                                             std::vector<std::uint64_t> outputs);

    // JSON file with fields "name", "n", "outputs" (length 2^n)
    static boolean_function load_truth_table(const std::string& path);

private:
    std::string name_;
    int arity_;
    std::function<std::uint64_t(std::uint64_t)> eval_;
};

// Built-in registry. Names: "be" (the value of x itself), "xor", "or",
// "and", "majority" (strict, ones > n/2), "threshold:t" (ones >= t).
boolean_function make_function(const std::string& name, int n);

}
