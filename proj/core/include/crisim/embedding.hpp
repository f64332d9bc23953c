#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crisim/tokenize.hpp"

namespace crisim {

/// Token -> dense vector map with fixed dimension. Immutable once loaded.
class EmbeddingTable {
public:
    explicit EmbeddingTable(std::size_t dimension);

    /// Lowercases the token. Returns false, leaving the table unchanged, when
    /// the token already exists. Throws DimensionMismatch on wrong arity.
    bool add(std::string_view token, std::vector<double> vector);

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t size() const noexcept { return tokens_.size(); }
    bool contains(std::string_view token) const { return index_of(token).has_value(); }

    std::optional<std::size_t> index_of(std::string_view token) const;
    const std::string& token(std::size_t index) const { return tokens_[index]; }
    std::span<const double> vector(std::size_t index) const;
    /// L2-normalised copy; all zeros for a zero vector.
    std::span<const double> unit_vector(std::size_t index) const;

    /// Clamped cosine between two rows.
    double cosine(std::size_t a, std::size_t b) const;

private:
    std::size_t dimension_;
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<double> data_;
    std::vector<double> unit_;
};

struct EmbeddingLoadOptions {
    /// Fixes the expected dimension; a leading "<count> <dimension>" header line is then skipped.
    std::optional<std::size_t> dimension;
};

/// Reads `token v1 ... vd` lines. Duplicate tokens keep the first occurrence
/// and add a warning. Throws DimensionMismatch (with line number) and EmptyFile.
EmbeddingTable load_embeddings(std::istream& in, const EmbeddingLoadOptions& options = {},
                               std::vector<std::string>* warnings = nullptr);
EmbeddingTable load_embeddings(const std::filesystem::path& path,
                               const EmbeddingLoadOptions& options = {},
                               std::vector<std::string>* warnings = nullptr);

/// Cosine similarity clamped to [0,1]. Out-of-vocabulary tokens score 1 only
/// against the identical string.
double word_sim(std::string_view w1, std::string_view w2, const EmbeddingTable& table);

/// Best word_sim of `word` against any token of `phrase`. Throws EmptyPhrase.
double word_to_phrase_sim(std::string_view word, const TokenSeq& phrase, const EmbeddingTable& table);

}  // namespace crisim
