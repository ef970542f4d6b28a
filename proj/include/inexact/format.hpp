#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace inexact {

// Shortest round-trip decimal form. Reports are compared byte for byte, so
// every floating value that reaches an output file goes through here.
inline std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string fmt_u64(std::uint64_t v) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}
