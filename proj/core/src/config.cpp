#include "cohdet/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cohdet/errors.hpp"

namespace cohdet {

namespace {

std::string trim(const std::string& s) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    auto begin = std::find_if_not(s.begin(), s.end(), is_space);
    auto end = std::find_if_not(s.rbegin(), s.rend(), is_space).base();
    return begin < end ? std::string(begin, end) : std::string();
}

}  // namespace

void Config::fail(const std::string& message) const {
    throw config_error(origin_ + ": " + message);
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error(path + ": cannot open config file");
    return parse(in, path);
}

Config Config::parse(std::istream& in, const std::string& origin) {
    Config config;
    config.origin_ = origin;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            config.fail("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) config.fail("line " + std::to_string(line_no) + ": empty key");
        if (!config.values_.emplace(key, value).second)
            config.fail("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    return config;
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

double Config::number(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) fail("missing required key '" + key + "'");
    const std::string& text = it->second;
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        fail("key '" + key + "': cannot parse number from '" + text + "'");
    return value;
}

double Config::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

long long Config::integer(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) fail("missing required key '" + key + "'");
    const std::string& text = it->second;
    long long value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        fail("key '" + key + "': cannot parse integer from '" + text + "'");
    return value;
}

long long Config::integer_or(const std::string& key, long long fallback) const {
    return has(key) ? integer(key) : fallback;
}

std::uint64_t Config::seed_or(const std::string& key, std::uint64_t fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& text = it->second;
    std::uint64_t value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        fail("key '" + key + "': cannot parse unsigned seed from '" + text + "'");
    return value;
}

bool Config::flag_or(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& text = it->second;
    if (text == "true" || text == "yes" || text == "1" || text == "on") return true;
    if (text == "false" || text == "no" || text == "0" || text == "off") return false;
    fail("key '" + key + "': expected a boolean, got '" + text + "'");
}

std::string Config::text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) fail("missing required key '" + key + "'");
    return it->second;
}

std::string Config::text_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

void Config::require_known(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : values_) {
        (void)value;
        if (!allowed.count(key)) fail("unknown key '" + key + "'");
    }
}

}  // namespace cohdet
