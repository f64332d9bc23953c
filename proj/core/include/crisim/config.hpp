#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace crisim {

/// Values of the small TOML subset used for config and column-map files:
/// `[section]` headers, `key = value` with strings, integers, floats,
/// booleans and flat string arrays, and `#` comments.
using ConfigValue = std::variant<std::string, std::int64_t, double, bool, std::vector<std::string>>;

class ConfigFile {
public:
    static ConfigFile parse(std::istream& in);
    static ConfigFile load(const std::filesystem::path& path);

    /// Keys before any section header live in section "".
    const std::map<std::string, ConfigValue>* section(const std::string& name) const;
    const ConfigValue* get(const std::string& section, const std::string& key) const;

    std::optional<std::string> get_string(const std::string& section, const std::string& key) const;
    std::optional<std::int64_t> get_int(const std::string& section, const std::string& key) const;
    std::optional<bool> get_bool(const std::string& section, const std::string& key) const;

private:
    std::map<std::string, std::map<std::string, ConfigValue>> sections_;
};

}  // namespace crisim
