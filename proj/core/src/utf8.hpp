#pragma once

// Minimal UTF-8 handling for tokenization and label folding. Case mapping
// covers ASCII, Latin-1 Supplement, Latin Extended-A and basic Greek/Cyrillic;
// other code points are treated as caseless letters.

#include <cstdint>
#include <string>
#include <string_view>

namespace crisim::utf8 {

/// Decodes one code point starting at `pos`, advancing it. Invalid bytes
/// decode as U+FFFD and consume one byte.
char32_t next(std::string_view s, std::size_t& pos);
void append(std::string& out, char32_t cp);

bool is_upper(char32_t cp);
char32_t to_lower(char32_t cp);
bool is_digit(char32_t cp);
bool is_letter(char32_t cp);

std::string lower(std::string_view s);

}  // namespace crisim::utf8
