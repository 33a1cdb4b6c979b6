// key = value configuration files: one pair per line, full-line comments
// with '#', duplicate keys rejected. Numeric parsing is locale-independent.

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <string>

namespace cohdet {

class Config {
public:
    Config() = default;

    // Both throw config_error with line context on malformed input.
    static Config parse_file(const std::string& path);
    static Config parse(std::istream& in, const std::string& origin);

    bool has(const std::string& key) const;

    // Typed lookups; config_error if the key is absent or unparsable.
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    long long integer(const std::string& key) const;
    long long integer_or(const std::string& key, long long fallback) const;
    std::uint64_t seed_or(const std::string& key, std::uint64_t fallback) const;
    bool flag_or(const std::string& key, bool fallback) const;
    std::string text(const std::string& key) const;
    std::string text_or(const std::string& key, const std::string& fallback) const;

    // Command-line override; replaces any file value.
    void set(const std::string& key, const std::string& value);

    // Rejects keys outside the given schema (config_error naming the key).
    void require_known(const std::set<std::string>& allowed) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
    std::string origin_ = "<config>";

    [[noreturn]] void fail(const std::string& message) const;
};

}  // namespace cohdet
