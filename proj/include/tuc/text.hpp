#pragma once

#include <charconv>
#include <string>

namespace tuc {

// Shortest round-trip decimal form (std::to_chars). NaN prints as "nan",
// which is the literal token the stats CSV interfaces require.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace tuc
