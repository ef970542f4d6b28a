#include "inexact/function.hpp"

#include <bit>
#include <fstream>
#include <memory>
#include <utility>

#include "json.hpp"

namespace inexact {

boolean_function::boolean_function(std::string name, int arity,
                                   std::function<std::uint64_t(std::uint64_t)> eval)
    : name_(std::move(name)), arity_(arity), eval_(std::move(eval)) {
    width_mask(arity_);  // validates 1 <= arity <= 63
    if (!eval_) throw std::invalid_argument("function '" + name_ + "' has no evaluator");
}

std::uint64_t boolean_function::operator()(const bitvec& x) const {
    if (x.width() != arity_)
        throw std::invalid_argument("function '" + name_ + "' has arity " +
                                    std::to_string(arity_) + ", input has width " +
                                    std::to_string(x.width()));
    return eval_(x.value());
}

boolean_function boolean_function::from_truth_table(std::string name, int n,
                                                    std::vector<std::uint64_t> outputs) {
    width_mask(n);
    const std::size_t expect = std::size_t{1} << n;
    if (outputs.size() != expect)
        throw std::invalid_argument("truth table '" + name + "' needs " +
                                    std::to_string(expect) + " outputs, got " +
                                    std::to_string(outputs.size()));
    auto table = std::make_shared<std::vector<std::uint64_t>>(std::move(outputs));
    return boolean_function(std::move(name), n,
                            [table](std::uint64_t x) { return (*table)[x]; });
}

boolean_function boolean_function::load_truth_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open truth table file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("truth table file " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("name") || !doc.contains("n") || !doc.contains("outputs"))
        throw std::runtime_error("truth table file " + path +
                                 " must be an object with fields name, n, outputs");
    if (!doc["name"].is_string() || !doc["n"].is_number_integer() || !doc["outputs"].is_array())
        throw std::runtime_error("truth table file " + path + " has wrongly typed fields");
    const int n = doc["n"].get<int>();
    width_mask(n);
    std::vector<std::uint64_t> outputs;
    outputs.reserve(doc["outputs"].size());
    for (const auto& v : doc["outputs"]) {
        if (!v.is_number_unsigned() && !v.is_number_integer())
            throw std::runtime_error("truth table file " + path + " has a non-integer output");
        if (v.is_number_integer() && v.get<std::int64_t>() < 0)
            throw std::runtime_error("truth table file " + path + " has a negative output");
        outputs.push_back(v.get<std::uint64_t>());
    }
    return from_truth_table(doc["name"].get<std::string>(), n, std::move(outputs));
}

boolean_function make_function(const std::string& name, int n) {
    const std::uint64_t mask = width_mask(n);
    if (name == "be")
        return boolean_function("be", n, [](std::uint64_t x) { return x; });
    if (name == "xor")
        return boolean_function("xor", n, [](std::uint64_t x) {
            return static_cast<std::uint64_t>(std::popcount(x) & 1);
        });
    if (name == "or")
        return boolean_function("or", n, [](std::uint64_t x) {
            return static_cast<std::uint64_t>(x != 0);
        });
    if (name == "and")
        return boolean_function("and", n, [mask](std::uint64_t x) {
            return static_cast<std::uint64_t>(x == mask);
        });
    if (name == "majority")
        return boolean_function("majority", n, [n](std::uint64_t x) {
            return static_cast<std::uint64_t>(2 * std::popcount(x) > n);
        });
    if (name.rfind("threshold:", 0) == 0) {
        int t = 0;
        try {
            t = std::stoi(name.substr(10));
        } catch (...) {
            throw std::invalid_argument("bad threshold spec '" + name + "'");
        }
        if (t < 0 || t > n + 1)
            throw std::invalid_argument("threshold " + std::to_string(t) +
                                        " outside [0, n+1] for n=" + std::to_string(n));
        return boolean_function(name, n, [t](std::uint64_t x) {
            return static_cast<std::uint64_t>(std::popcount(x) >= t);
        });
    }
    throw std::invalid_argument("unknown function '" + name + "'");
}

}
