#include "pm25/kv_file.hpp"

#include <charconv>
#include <fstream>

namespace pm25 {

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

KeyValueFile KeyValueFile::parse(std::istream& in, std::string_view source) {
    KeyValueFile out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(source) + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        }
        auto key = trim(view.substr(0, eq));
        if (key.empty()) {
            throw ConfigError(std::string(source) + ":" + std::to_string(lineno) + ": empty key");
        }
        out.entries_[std::string(key)] = std::string(trim(view.substr(eq + 1)));
    }
    return out;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    return parse(in, path.string());
}

bool KeyValueFile::contains(std::string_view key) const { return entries_.find(key) != entries_.end(); }

std::optional<std::string> KeyValueFile::get(std::string_view key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::string KeyValueFile::get_or(std::string_view key, std::string fallback) const {
    auto v = get(key);
    return v ? *v : std::move(fallback);
}

std::optional<double> KeyValueFile::get_double(std::string_view key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc{} || ptr != v->data() + v->size()) {
        throw ConfigError("key '" + std::string(key) + "': not a number: " + *v);
    }
    return out;
}

std::optional<long long> KeyValueFile::get_int(std::string_view key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    long long out = 0;
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc{} || ptr != v->data() + v->size()) {
        throw ConfigError("key '" + std::string(key) + "': not an integer: " + *v);
    }
    return out;
}

std::optional<bool> KeyValueFile::get_bool(std::string_view key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw ConfigError("key '" + std::string(key) + "': not a boolean: " + *v);
}

std::vector<std::string> KeyValueFile::get_list(std::string_view key) const {
    std::vector<std::string> out;
    auto v = get(key);
    if (!v) return out;
    std::string_view rest = *v;
    while (true) {
        const auto comma = rest.find(',');
        auto item = trim(rest.substr(0, comma));
        if (!item.empty()) out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

void KeyValueFile::set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }

std::vector<std::string> KeyValueFile::keys_with_prefix(std::string_view prefix) const {
    std::vector<std::string> out;
    for (auto it = entries_.lower_bound(prefix); it != entries_.end(); ++it) {
        if (!std::string_view(it->first).starts_with(prefix)) break;
        out.push_back(it->first);
    }
    return out;
}

}  // namespace pm25
