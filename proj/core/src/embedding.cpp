#include "crisim/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "crisim/error.hpp"
#include "utf8.hpp"

namespace crisim {

EmbeddingTable::EmbeddingTable(std::size_t dimension) : dimension_(dimension) {
    if (dimension == 0) throw DimensionMismatch("embedding dimension must be positive");
}

bool EmbeddingTable::add(std::string_view token, std::vector<double> vector) {
    if (vector.size() != dimension_)
        throw DimensionMismatch("expected " + std::to_string(dimension_) + " values, got " +
                                std::to_string(vector.size()));
    auto key = utf8::lower(token);
    if (index_.contains(key)) return false;

    double norm = 0;
    for (const double v : vector) norm += v * v;
    norm = std::sqrt(norm);

    index_.emplace(key, tokens_.size());
    tokens_.push_back(std::move(key));
    for (const double v : vector) {
        data_.push_back(v);
        unit_.push_back(norm > 0 ? v / norm : 0.0);
    }
    return true;
}

std::optional<std::size_t> EmbeddingTable::index_of(std::string_view token) const {
    const auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::span<const double> EmbeddingTable::vector(std::size_t index) const {
    return {data_.data() + index * dimension_, dimension_};
}

std::span<const double> EmbeddingTable::unit_vector(std::size_t index) const {
    return {unit_.data() + index * dimension_, dimension_};
}

double EmbeddingTable::cosine(std::size_t a, std::size_t b) const {
    if (a == b) return 1.0;
    const auto ua = unit_vector(a);
    const auto ub = unit_vector(b);
    double dot = 0;
    for (std::size_t i = 0; i < dimension_; ++i) dot += ua[i] * ub[i];
    return std::clamp(dot, 0.0, 1.0);
}

EmbeddingTable load_embeddings(std::istream& in, const EmbeddingLoadOptions& options,
                               std::vector<std::string>* warnings) {
    std::optional<EmbeddingTable> table;
    if (options.dimension) table.emplace(*options.dimension);

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> fields;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        fields.clear();
        std::istringstream split(line);
        for (std::string f; split >> f;) fields.push_back(std::move(f));
        if (fields.empty()) continue;

        if (line_no == 1 && options.dimension && fields.size() == 2 &&
            std::all_of(line.begin(), line.end(),
                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == ' ' || c == '\t'; }))
            continue;

        std::vector<double> values;
        values.reserve(fields.size() - 1);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            double v = 0;
            const auto& f = fields[i];
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || ptr != f.data() + f.size())
                throw Error("line " + std::to_string(line_no) + ": invalid number '" + f + "'");
            values.push_back(v);
        }
        if (!table) {
            if (values.empty())
                throw DimensionMismatch("line " + std::to_string(line_no) + ": no vector values");
            table.emplace(values.size());
        }
        if (values.size() != table->dimension())
            throw DimensionMismatch("line " + std::to_string(line_no) + ": expected " +
                                    std::to_string(table->dimension()) + " values, got " +
                                    std::to_string(values.size()));
        if (!table->add(fields[0], std::move(values)) && warnings)
            warnings->push_back("line " + std::to_string(line_no) + ": duplicate token '" +
                                fields[0] + "' ignored");
    }
    if (!table || table->size() == 0) throw EmptyFile("embedding file contains no vectors");
    return std::move(*table);
}

EmbeddingTable load_embeddings(const std::filesystem::path& path, const EmbeddingLoadOptions& options,
                               std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open embedding file: " + path.string());
    return load_embeddings(in, options, warnings);
}

double word_sim(std::string_view w1, std::string_view w2, const EmbeddingTable& table) {
    if (w1 == w2) return 1.0;
    const auto a = table.index_of(w1);
    const auto b = table.index_of(w2);
    if (!a || !b) return 0.0;
    return table.cosine(*a, *b);
}

double word_to_phrase_sim(std::string_view word, const TokenSeq& phrase, const EmbeddingTable& table) {
    if (phrase.empty()) throw EmptyPhrase("phrase has no tokens");
    double best = 0.0;
    for (const auto& q : phrase) best = std::max(best, word_sim(word, q, table));
    return best;
}

}  // namespace crisim
