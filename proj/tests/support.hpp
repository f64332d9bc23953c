#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "crisim/embedding.hpp"
#include "crisim/ingest.hpp"
#include "crisim/knowledge_base.hpp"

namespace testing_support {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(CRISIM_FIXTURE_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline const crisim::Taxonomy& taxonomy() {
    static const crisim::Taxonomy t = crisim::build_taxonomy();
    return t;
}

inline const crisim::ParsedCsv& fixture_csv() {
    static const crisim::ParsedCsv parsed = [] {
        std::ifstream in(fixture("france287.csv"), std::ios::binary);
        return crisim::parse_csv(in, crisim::CsvSchema::emdat(), taxonomy());
    }();
    return parsed;
}

inline const crisim::KnowledgeBase& fixture_kb() {
    static const crisim::KnowledgeBase kb = [] {
        crisim::KnowledgeBase k;
        k.assert_taxonomy();
        crisim::ingest_corpus(fixture_csv().records, k);
        return k;
    }();
    return kb;
}

inline const crisim::EmbeddingTable& toy_table() {
    static const crisim::EmbeddingTable t = crisim::load_embeddings(fixture("toy_vectors.txt"));
    return t;
}

}  // namespace testing_support
