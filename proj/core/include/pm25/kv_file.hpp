#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pm25 {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` text. '#' starts a comment, blank lines are ignored and
/// later keys override earlier ones. Used for run configs and CSV schemas.
class KeyValueFile {
public:
    KeyValueFile() = default;

    static KeyValueFile parse(std::istream& in, std::string_view source = "<stream>");
    static KeyValueFile load(const std::filesystem::path& path);

    bool contains(std::string_view key) const;
    std::optional<std::string> get(std::string_view key) const;
    std::string get_or(std::string_view key, std::string fallback) const;

    /// Typed lookups; throw ConfigError naming the key on a malformed value.
    std::optional<double> get_double(std::string_view key) const;
    std::optional<long long> get_int(std::string_view key) const;
    std::optional<bool> get_bool(std::string_view key) const;
    /// Comma-separated list with surrounding whitespace trimmed.
    std::vector<std::string> get_list(std::string_view key) const;

    void set(std::string key, std::string value);

    /// Keys starting with `prefix`, in sorted order.
    std::vector<std::string> keys_with_prefix(std::string_view prefix) const;
    const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

private:
    std::map<std::string, std::string, std::less<>> entries_;
};

std::string_view trim(std::string_view s);

}  // namespace pm25
