#pragma once

#include <charconv>
#include <string>

namespace opuc::detail {

/// Shortest decimal text that round-trips to the same double.
inline std::string shortest(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace opuc::detail
