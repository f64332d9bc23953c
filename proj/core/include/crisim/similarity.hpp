#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crisim/embedding.hpp"
#include "crisim/tokenize.hpp"
#include "crisim/triple.hpp"

namespace crisim {

/// Per-predicate, per-component min-max scaling fitted over a corpus.
class QuantScaler {
public:
    void observe(const TripleSet& set);
    static QuantScaler fit(std::span<const TripleSet> sets);

    /// Maps each component to [0,1]; components with no spread map to 0.
    /// Predicates never observed pass through unchanged.
    std::vector<double> scale(const std::string& predicate, std::span<const double> values) const;

private:
    struct Range {
        std::vector<double> lo;
        std::vector<double> hi;
    };
    std::map<std::string, Range, std::less<>> ranges_;
};

struct ScoringOptions {
    bool normalize_quant = false;
    std::size_t workers = 1;
    /// Used when normalize_quant is set; when absent, sim_sets fits one over its two inputs.
    const QuantScaler* scaler = nullptr;
};

struct AlignedPair {
    std::string predicate;
    std::optional<Triple> left;
    std::optional<Triple> right;
    TripleKind kind = TripleKind::Qualitative;

    bool two_sided() const noexcept { return left.has_value() && right.has_value(); }
};

struct SimilarityScore {
    double qualitative_avg = 0;   // mean Sim1 over qualitative aligned pairs
    double quantitative_avg = 0;  // mean Sim2 over quantitative aligned pairs
    double combined = 0;          // qualitative_avg + quantitative_avg, in [0,2]
    double normalized = 0;        // pair-count weighted mean, in [0,1]
    std::size_t qualitative_pairs = 0;   // L
    std::size_t quantitative_pairs = 0;  // H
};

TripleKind classify_triple(const Triple& t);

/// Subject local name, predicate local name and object text, tokenized.
TokenSeq qspo_tokens(const Triple& t);

/// Symmetric word-alignment similarity of two token sequences: every word's
/// best match in the other sequence, averaged over both sequences.
/// Throws EmptyPhrase if either sequence is empty.
double token_set_similarity(const TokenSeq& a, const TokenSeq& b, const EmbeddingTable& table);

/// Qualitative triple similarity over subject, predicate and object words.
double sim_qualitative(const Triple& a, const Triple& b, const EmbeddingTable& table);

/// 1 / (1 + Euclidean distance). Throws DimensionMismatch.
double sim_quantitative(std::span<const double> a, std::span<const double> b);

/// Pairs triples by predicate. Single-valued predicates pair directly;
/// multi-valued ones pair greedily by descending similarity. Leftovers are
/// one-sided. Output is sorted by predicate.
std::vector<AlignedPair> align(const TripleSet& left, const TripleSet& right,
                               const EmbeddingTable& table, const ScoringOptions& options = {});

/// Set-level score: averaged qualitative plus averaged quantitative similarity
/// over aligned pairs, one-sided pairs scoring 0. Throws EmptySet.
SimilarityScore sim_sets(const TripleSet& left, const TripleSet& right, const EmbeddingTable& table,
                         const ScoringOptions& options = {});

}  // namespace crisim
