#include "crisim/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "crisim/error.hpp"

namespace crisim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw Error("config line " + std::to_string(line) + ": " + what);
}

// Parses a quoted string at the start of `s`, returning it and the rest.
std::pair<std::string, std::string_view> quoted(std::string_view s, std::size_t line) {
    const char q = s.front();
    std::string out;
    std::size_t i = 1;
    for (; i < s.size() && s[i] != q; ++i) {
        if (q == '"' && s[i] == '\\' && i + 1 < s.size()) {
            const char e = s[++i];
            switch (e) {
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                default: fail(line, "unsupported escape");
            }
        } else {
            out.push_back(s[i]);
        }
    }
    if (i >= s.size()) fail(line, "unterminated string");
    return {out, s.substr(i + 1)};
}

std::string_view strip_comment(std::string_view s) {
    char quote = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (quote) {
            if (c == '\\' && quote == '"') ++i;
            else if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '#') {
            return s.substr(0, i);
        }
    }
    return s;
}

ConfigValue parse_value(std::string_view v, std::size_t line) {
    if (v.empty()) fail(line, "missing value");
    if (v.front() == '"' || v.front() == '\'') {
        auto [s, rest] = quoted(v, line);
        if (!trim(rest).empty()) fail(line, "trailing characters after string");
        return s;
    }
    if (v.front() == '[') {
        std::vector<std::string> items;
        std::string_view rest = trim(v.substr(1));
        while (!rest.empty() && rest.front() != ']') {
            if (rest.front() != '"' && rest.front() != '\'') fail(line, "arrays may only hold strings");
            auto [s, after] = quoted(rest, line);
            items.push_back(std::move(s));
            rest = trim(after);
            if (!rest.empty() && rest.front() == ',') rest = trim(rest.substr(1));
        }
        if (rest.empty()) fail(line, "unterminated array");
        if (!trim(rest.substr(1)).empty()) fail(line, "trailing characters after array");
        return items;
    }
    if (v == "true") return true;
    if (v == "false") return false;

    std::int64_t i = 0;
    if (auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), i); ec == std::errc() && p == v.data() + v.size())
        return i;
    double d = 0;
    if (auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), d); ec == std::errc() && p == v.data() + v.size())
        return d;
    fail(line, "cannot parse value '" + std::string(v) + "'");
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in) {
    ConfigFile cfg;
    std::string current;
    cfg.sections_[current];
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto text = trim(strip_comment(raw));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') fail(line, "malformed section header");
            current = std::string(trim(text.substr(1, text.size() - 2)));
            cfg.sections_[current];
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) fail(line, "expected key = value");
        auto key = std::string(trim(text.substr(0, eq)));
        if (key.size() >= 2 && (key.front() == '"' || key.front() == '\'')) key = quoted(key, line).first;
        if (key.empty()) fail(line, "empty key");
        cfg.sections_[current][key] = parse_value(trim(text.substr(eq + 1)), line);
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path.string());
    return parse(in);
}

const std::map<std::string, ConfigValue>* ConfigFile::section(const std::string& name) const {
    const auto it = sections_.find(name);
    return it == sections_.end() ? nullptr : &it->second;
}

const ConfigValue* ConfigFile::get(const std::string& sec, const std::string& key) const {
    const auto* s = section(sec);
    if (!s) return nullptr;
    const auto it = s->find(key);
    return it == s->end() ? nullptr : &it->second;
}

std::optional<std::string> ConfigFile::get_string(const std::string& sec, const std::string& key) const {
    const auto* v = get(sec, key);
    if (!v) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(v)) return *s;
    throw Error("config key '" + key + "' must be a string");
}

std::optional<std::int64_t> ConfigFile::get_int(const std::string& sec, const std::string& key) const {
    const auto* v = get(sec, key);
    if (!v) return std::nullopt;
    if (const auto* i = std::get_if<std::int64_t>(v)) return *i;
    throw Error("config key '" + key + "' must be an integer");
}

std::optional<bool> ConfigFile::get_bool(const std::string& sec, const std::string& key) const {
    const auto* v = get(sec, key);
    if (!v) return std::nullopt;
    if (const auto* b = std::get_if<bool>(v)) return *b;
    throw Error("config key '" + key + "' must be a boolean");
}

}  // namespace crisim
