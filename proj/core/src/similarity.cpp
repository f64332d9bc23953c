#include "crisim/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "alignment.hpp"
#include "crisim/error.hpp"
#include "score_result.hpp"

namespace crisim {

void QuantScaler::observe(const TripleSet& set) {
    for (const auto& t : set.triples) {
        const auto* q = std::get_if<Quantitative>(&t.object);
        if (!q) continue;
        auto [it, inserted] = ranges_.try_emplace(t.predicate, Range{q->values, q->values});
        if (inserted) continue;
        auto& r = it->second;
        if (r.lo.size() != q->values.size())
            throw DimensionMismatch("inconsistent dimension for " + t.predicate);
        for (std::size_t i = 0; i < q->values.size(); ++i) {
            r.lo[i] = std::min(r.lo[i], q->values[i]);
            r.hi[i] = std::max(r.hi[i], q->values[i]);
        }
    }
}

QuantScaler QuantScaler::fit(std::span<const TripleSet> sets) {
    QuantScaler s;
    for (const auto& set : sets) s.observe(set);
    return s;
}

std::vector<double> QuantScaler::scale(const std::string& predicate, std::span<const double> values) const {
    std::vector<double> out(values.begin(), values.end());
    const auto it = ranges_.find(predicate);
    if (it == ranges_.end() || it->second.lo.size() != values.size()) return out;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double span = it->second.hi[i] - it->second.lo[i];
        out[i] = span > 0 ? (out[i] - it->second.lo[i]) / span : 0.0;
    }
    return out;
}

TripleKind classify_triple(const Triple& t) { return kind_of(t.object); }

TokenSeq qspo_tokens(const Triple& t) {
    TokenSeq tokens = tokenize(local_name(t.subject), TextKind::LocalName);
    for (auto& w : tokenize(local_name(t.predicate), TextKind::LocalName)) tokens.push_back(std::move(w));
    if (const auto* q = std::get_if<Qualitative>(&t.object))
        for (auto& w : tokenize(q->text, TextKind::Literal)) tokens.push_back(std::move(w));
    return tokens;
}

double token_set_similarity(const TokenSeq& a, const TokenSeq& b, const EmbeddingTable& table) {
    if (a.empty() || b.empty()) throw EmptyPhrase("qualitative triple has no tokens");
    double from_a = 0;
    for (const auto& w : a) from_a += word_to_phrase_sim(w, b, table);
    double from_b = 0;
    for (const auto& w : b) from_b += word_to_phrase_sim(w, a, table);
    return (from_a + from_b) / static_cast<double>(a.size() + b.size());
}

double sim_qualitative(const Triple& a, const Triple& b, const EmbeddingTable& table) {
    return token_set_similarity(qspo_tokens(a), qspo_tokens(b), table);
}

double sim_quantitative(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionMismatch("cannot compare vectors of dimension " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()));
    double sq = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sq += d * d;
    }
    return 1.0 / (1.0 + std::sqrt(sq));
}

namespace {

struct Group {
    std::string_view predicate;
    TripleKind kind;
    std::vector<const Triple*> triples;
};

std::vector<Group> group_by_predicate(const TripleSet& set) {
    std::vector<const Triple*> sorted;
    for (const auto& t : set.triples) sorted.push_back(&t);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Triple* a, const Triple* b) { return canonical_less(*a, *b); });
    std::vector<Group> groups;
    for (const Triple* t : sorted) {
        const auto kind = kind_of(t->object);
        if (groups.empty() || groups.back().predicate != t->predicate || groups.back().kind != kind)
            groups.push_back({t->predicate, kind, {}});
        groups.back().triples.push_back(t);
    }
    return groups;
}

double pair_similarity(const Triple& a, const Triple& b, const EmbeddingTable& table,
                       const ScoringOptions& options) {
    if (kind_of(a.object) == TripleKind::Qualitative) return sim_qualitative(a, b, table);
    const auto& va = std::get<Quantitative>(a.object).values;
    const auto& vb = std::get<Quantitative>(b.object).values;
    if (options.normalize_quant && options.scaler)
        return sim_quantitative(options.scaler->scale(a.predicate, va), options.scaler->scale(b.predicate, vb));
    return sim_quantitative(va, vb);
}

struct AlignedWithScore {
    AlignedPair pair;
    double similarity;
};

std::vector<AlignedWithScore> align_scored(const TripleSet& left, const TripleSet& right,
                                           const EmbeddingTable& table, const ScoringOptions& options) {
    const auto lg = group_by_predicate(left);
    const auto rg = group_by_predicate(right);
    const auto key_less = [](const Group& a, const Group& b) {
        if (a.predicate != b.predicate) return a.predicate < b.predicate;
        return a.kind < b.kind;
    };

    std::vector<AlignedWithScore> out;
    const std::vector<const Triple*> none;
    std::size_t i = 0, j = 0;
    while (i < lg.size() || j < rg.size()) {
        const Group* l = nullptr;
        const Group* r = nullptr;
        if (j == rg.size() || (i < lg.size() && key_less(lg[i], rg[j]))) {
            l = &lg[i++];
        } else if (i == lg.size() || key_less(rg[j], lg[i])) {
            r = &rg[j++];
        } else {
            l = &lg[i++];
            r = &rg[j++];
        }
        const auto& lt = l ? l->triples : none;
        const auto& rt = r ? r->triples : none;
        const Group& g = l ? *l : *r;

        const auto pairs = detail::pair_group(
            lt.size(), rt.size(),
            [&](std::size_t a, std::size_t b) { return pair_similarity(*lt[a], *rt[b], table, options); },
            [&](int side, std::size_t k) -> const ObjectValue& {
                return side == 0 ? lt[k]->object : rt[k]->object;
            });
        for (const auto& p : pairs) {
            AlignedPair ap{std::string(g.predicate), std::nullopt, std::nullopt, g.kind};
            if (p.left) ap.left = *lt[*p.left];
            if (p.right) ap.right = *rt[*p.right];
            out.push_back({std::move(ap), p.similarity});
        }
    }
    return out;
}

}  // namespace

std::vector<AlignedPair> align(const TripleSet& left, const TripleSet& right, const EmbeddingTable& table,
                               const ScoringOptions& options) {
    std::vector<AlignedPair> out;
    for (auto& a : align_scored(left, right, table, options)) out.push_back(std::move(a.pair));
    return out;
}

SimilarityScore sim_sets(const TripleSet& left, const TripleSet& right, const EmbeddingTable& table,
                         const ScoringOptions& options) {
    if (left.empty() || right.empty()) throw EmptySet("cannot score an empty triple set");

    ScoringOptions effective = options;
    QuantScaler local;
    if (options.normalize_quant && !options.scaler) {
        local.observe(left);
        local.observe(right);
        effective.scaler = &local;
    }

    detail::ScoreAccumulator acc;
    for (const auto& a : align_scored(left, right, table, effective)) acc.add(a.pair.kind, a.similarity);
    return detail::finish(acc);
}

}  // namespace crisim
