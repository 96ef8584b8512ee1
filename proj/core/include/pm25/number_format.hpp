#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace pm25 {

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline constexpr std::string_view kUndefined = "NA";

/// format_double, or "NA" for an undefined value.
inline std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string(kUndefined);
}

}  // namespace pm25
