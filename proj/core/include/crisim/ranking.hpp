#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "crisim/knowledge_base.hpp"
#include "crisim/similarity.hpp"

namespace crisim {

struct RankedCrisis {
    std::string id;
    SimilarityScore score;
};

struct SimilarityMatrix {
    std::vector<std::string> ids;
    std::vector<double> scores;  // row-major n x n combined scores

    std::size_t size() const noexcept { return ids.size(); }
    double at(std::size_t i, std::size_t j) const { return scores[i * ids.size() + j]; }
};

/// Scores crises of a frozen knowledge base. Each crisis is tokenized and
/// mapped onto embedding rows once; pair scoring then works on ids.
class SimilarityEngine {
public:
    SimilarityEngine(const KnowledgeBase& kb, const EmbeddingTable& table, ScoringOptions options = {});
    ~SimilarityEngine();
    SimilarityEngine(const SimilarityEngine&) = delete;
    SimilarityEngine& operator=(const SimilarityEngine&) = delete;

    const std::vector<std::string>& ids() const noexcept { return ids_; }

    SimilarityScore score(std::string_view a, std::string_view b) const;
    SimilarityScore score(std::size_t a, std::size_t b) const;

    /// All other crises by combined score descending, ties by id ascending; first k kept.
    std::vector<RankedCrisis> top_k(std::string_view query, std::size_t k) const;
    SimilarityMatrix matrix(const std::vector<std::string>& ids) const;

private:
    struct Prepared;
    std::size_t position(std::string_view id) const;

    const EmbeddingTable& table_;
    ScoringOptions options_;
    std::vector<std::string> ids_;
    std::vector<Prepared> prepared_;
    std::vector<std::size_t> token_rows_;  // interned token id -> embedding row
};

std::vector<RankedCrisis> top_k(const KnowledgeBase& kb, std::string_view query_id, std::size_t k,
                                const EmbeddingTable& table, const ScoringOptions& options = {});

SimilarityMatrix matrix(const KnowledgeBase& kb, const std::vector<std::string>& ids,
                        const EmbeddingTable& table, const ScoringOptions& options = {});

/// Header row of ids, then one row per id, six decimals.
void write_matrix_csv(const SimilarityMatrix& m, std::ostream& out);

/// One JSON object per line: query, rank, id, combined, qualitative_avg, quantitative_avg.
void write_topk_jsonl(std::string_view query, const std::vector<RankedCrisis>& ranked, std::ostream& out);

}  // namespace crisim
