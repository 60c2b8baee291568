#pragma once

#include <charconv>
#include <ostream>
#include <string>

namespace fracsys {

/// Shortest representation that round-trips to the same double.
inline std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline std::ostream& put_double(std::ostream& os, double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    os.write(buf, res.ptr - buf);
    return os;
}

}  // namespace fracsys
