#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace crisim {

using TokenSeq = std::vector<std::string>;

enum class TextKind {
    Literal,    // free text: digit-only tokens are kept
    LocalName,  // IRI local name: digit-only tokens (sequence numbers) are dropped
};

/// Splits on whitespace, punctuation, underscores, letter/digit changes and
/// CamelCase boundaries, then lowercases.
TokenSeq tokenize(std::string_view text, TextKind kind = TextKind::Literal);

}  // namespace crisim
