#include "crisim/tokenize.hpp"

#include <algorithm>

#include "utf8.hpp"

namespace crisim {

TokenSeq tokenize(std::string_view text, TextKind kind) {
    std::vector<char32_t> cps;
    for (std::size_t pos = 0; pos < text.size();) cps.push_back(utf8::next(text, pos));

    TokenSeq tokens;
    std::string current;
    bool current_digits = true;
    const auto flush = [&] {
        if (!current.empty() && !(kind == TextKind::LocalName && current_digits))
            tokens.push_back(current);
        current.clear();
        current_digits = true;
    };

    for (std::size_t i = 0; i < cps.size(); ++i) {
        const char32_t cp = cps[i];
        const bool letter = utf8::is_letter(cp);
        const bool digit = utf8::is_digit(cp);
        if (!letter && !digit) {
            flush();
            continue;
        }
        if (i > 0 && !current.empty()) {
            const char32_t prev = cps[i - 1];
            const bool prev_letter = utf8::is_letter(prev);
            const bool prev_upper = utf8::is_upper(prev);
            const bool upper = utf8::is_upper(cp);
            const bool next_lower = i + 1 < cps.size() && utf8::is_letter(cps[i + 1]) &&
                                    !utf8::is_upper(cps[i + 1]);
            const bool boundary =
                (letter != prev_letter) ||                  // letter <-> digit
                (upper && prev_letter && !prev_upper) ||    // camelCase
                (upper && prev_upper && next_lower);        // ABCWord -> ABC | Word
            if (boundary) flush();
        }
        utf8::append(current, utf8::to_lower(cp));
        current_digits = current_digits && digit;
    }
    flush();
    return tokens;
}

}  // namespace crisim
