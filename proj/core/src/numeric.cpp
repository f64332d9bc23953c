#include "crisim/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace crisim {

namespace {

// "1,234,567" -> "1234567"; rejects misplaced separators.
std::optional<std::string> strip_thousands(std::string_view digits) {
    if (digits.find(',') == std::string_view::npos) return std::string(digits);
    std::string out;
    std::size_t group = 0;
    bool first = true;
    for (std::size_t i = 0; i <= digits.size(); ++i) {
        if (i == digits.size() || digits[i] == ',') {
            if (first ? (group == 0 || group > 3) : group != 3) return std::nullopt;
            first = false;
            group = 0;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(digits[i]))) return std::nullopt;
        out.push_back(digits[i]);
        ++group;
    }
    return out;
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::optional<double> parse_number(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;

    std::string cleaned;
    if (text.front() == '-' || text.front() == '+') {
        if (text.front() == '-') cleaned.push_back('-');
        text.remove_prefix(1);
    }
    const std::size_t tail = std::min(text.find_first_of(".eE"), text.size());
    const auto int_part = strip_thousands(text.substr(0, tail));
    if (!int_part) return std::nullopt;
    cleaned += *int_part;
    cleaned.append(text.substr(tail));

    double v = 0;
    const auto [ptr, ec] = std::from_chars(cleaned.data(), cleaned.data() + cleaned.size(), v);
    if (ec != std::errc() || ptr != cleaned.data() + cleaned.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

}  // namespace crisim
