#include "crisim/ranking.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <ostream>
#include <thread>
#include <unordered_map>

#include "alignment.hpp"
#include "crisim/error.hpp"
#include "score_result.hpp"

namespace crisim {

namespace {

/// Runs fn(0..n-1) on up to `workers` threads. Callers write results by index.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (std::size_t i = next++; i < n; i = next++) fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

constexpr std::size_t kNoRow = static_cast<std::size_t>(-1);

}  // namespace

struct SimilarityEngine::Prepared {
    struct Item {
        std::string predicate;
        TripleKind kind;
        ObjectValue object;
        std::vector<std::size_t> tokens;  // interned token ids
        std::vector<double> values;       // possibly scaled
    };
    struct Group {
        std::size_t begin;
        std::size_t end;
    };
    std::vector<Item> items;  // sorted by (predicate, kind, object)
    std::vector<Group> groups;
};

namespace {

class TokenInterner {
public:
    explicit TokenInterner(const EmbeddingTable& table) : table_(table) {}

    std::size_t intern(const std::string& token) {
        auto [it, inserted] = ids_.try_emplace(token, rows_.size());
        if (inserted) rows_.push_back(table_.index_of(token).value_or(kNoRow));
        return it->second;
    }
    std::vector<std::size_t> take_rows() { return std::move(rows_); }

private:
    const EmbeddingTable& table_;
    std::unordered_map<std::string, std::size_t> ids_;
    std::vector<std::size_t> rows_;
};

}  // namespace

SimilarityEngine::SimilarityEngine(const KnowledgeBase& kb, const EmbeddingTable& table,
                                   ScoringOptions options)
    : table_(table), options_(options), ids_(kb.crisis_ids()) {
    std::vector<TripleSet> sets;
    sets.reserve(ids_.size());
    for (const auto& id : ids_) sets.push_back(kb.crisis_subgraph(id));

    QuantScaler fitted;
    const QuantScaler* scaler = options_.scaler;
    if (options_.normalize_quant && !scaler) {
        fitted = QuantScaler::fit(sets);
        scaler = &fitted;
    }

    TokenInterner interner(table_);
    prepared_.resize(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
        auto& p = prepared_[s];
        auto triples = sets[s].triples;
        std::stable_sort(triples.begin(), triples.end(), canonical_less);
        for (const auto& t : triples) {
            Prepared::Item item{t.predicate, kind_of(t.object), t.object, {}, {}};
            if (item.kind == TripleKind::Qualitative) {
                for (const auto& w : qspo_tokens(t)) item.tokens.push_back(interner.intern(w));
                if (item.tokens.empty()) throw EmptyPhrase("qualitative triple has no tokens");
            } else {
                const auto& v = std::get<Quantitative>(t.object).values;
                item.values = (options_.normalize_quant && scaler) ? scaler->scale(t.predicate, v) : v;
            }
            if (p.groups.empty() || p.items[p.groups.back().begin].predicate != item.predicate ||
                p.items[p.groups.back().begin].kind != item.kind)
                p.groups.push_back({p.items.size(), p.items.size()});
            p.items.push_back(std::move(item));
            p.groups.back().end = p.items.size();
        }
    }
    token_rows_ = interner.take_rows();
}

SimilarityEngine::~SimilarityEngine() = default;

std::size_t SimilarityEngine::position(std::string_view id) const {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) throw UnknownCrisis(std::string(id));
    return static_cast<std::size_t>(it - ids_.begin());
}

SimilarityScore SimilarityEngine::score(std::string_view a, std::string_view b) const {
    return score(position(a), position(b));
}

SimilarityScore SimilarityEngine::score(std::size_t a, std::size_t b) const {
    const Prepared& L = prepared_.at(a);
    const Prepared& R = prepared_.at(b);
    if (L.items.empty() || R.items.empty()) throw EmptySet("cannot score an empty triple set");

    const auto word = [&](std::size_t x, std::size_t y) {
        if (x == y) return 1.0;
        const auto rx = token_rows_[x];
        const auto ry = token_rows_[y];
        if (rx == kNoRow || ry == kNoRow) return 0.0;
        return table_.cosine(rx, ry);
    };
    const auto best = [&](std::size_t w, const std::vector<std::size_t>& phrase) {
        double m = 0.0;
        for (const auto q : phrase) m = std::max(m, word(w, q));
        return m;
    };
    const auto item_sim = [&](const Prepared::Item& x, const Prepared::Item& y) {
        if (x.kind == TripleKind::Qualitative) {
            double from_x = 0;
            for (const auto w : x.tokens) from_x += best(w, y.tokens);
            double from_y = 0;
            for (const auto w : y.tokens) from_y += best(w, x.tokens);
            return (from_x + from_y) / static_cast<double>(x.tokens.size() + y.tokens.size());
        }
        return sim_quantitative(x.values, y.values);
    };
    const auto group_less = [](const Prepared::Item& x, const Prepared::Item& y) {
        if (x.predicate != y.predicate) return x.predicate < y.predicate;
        return x.kind < y.kind;
    };

    detail::ScoreAccumulator acc;
    std::size_t i = 0, j = 0;
    while (i < L.groups.size() || j < R.groups.size()) {
        const Prepared::Group* lg = nullptr;
        const Prepared::Group* rg = nullptr;
        if (j == R.groups.size() ||
            (i < L.groups.size() && group_less(L.items[L.groups[i].begin], R.items[R.groups[j].begin]))) {
            lg = &L.groups[i++];
        } else if (i == L.groups.size() ||
                   group_less(R.items[R.groups[j].begin], L.items[L.groups[i].begin])) {
            rg = &R.groups[j++];
        } else {
            lg = &L.groups[i++];
            rg = &R.groups[j++];
        }
        const std::size_t nl = lg ? lg->end - lg->begin : 0;
        const std::size_t nr = rg ? rg->end - rg->begin : 0;
        const TripleKind kind = lg ? L.items[lg->begin].kind : R.items[rg->begin].kind;

        if (nl == 1 && nr == 1) {
            acc.add(kind, item_sim(L.items[lg->begin], R.items[rg->begin]));
            continue;
        }
        const auto pairs = detail::pair_group(
            nl, nr,
            [&](std::size_t x, std::size_t y) {
                return item_sim(L.items[lg->begin + x], R.items[rg->begin + y]);
            },
            [&](int side, std::size_t k) -> const ObjectValue& {
                return side == 0 ? L.items[lg->begin + k].object : R.items[rg->begin + k].object;
            });
        for (const auto& p : pairs) acc.add(kind, p.similarity);
    }
    return detail::finish(acc);
}

std::vector<RankedCrisis> SimilarityEngine::top_k(std::string_view query, std::size_t k) const {
    if (k == 0) throw Error("k must be at least 1");
    const std::size_t q = position(query);

    std::vector<RankedCrisis> ranked(ids_.size());
    parallel_for(ids_.size(), options_.workers, [&](std::size_t i) {
        if (i != q) ranked[i] = {ids_[i], score(q, i)};
    });
    ranked.erase(ranked.begin() + static_cast<std::ptrdiff_t>(q));
    std::sort(ranked.begin(), ranked.end(), [](const RankedCrisis& a, const RankedCrisis& b) {
        if (a.score.combined != b.score.combined) return a.score.combined > b.score.combined;
        return a.id < b.id;
    });
    if (ranked.size() > k) ranked.resize(k);
    return ranked;
}

SimilarityMatrix SimilarityEngine::matrix(const std::vector<std::string>& ids) const {
    if (ids.empty()) throw Error("matrix needs at least one crisis id");
    std::vector<std::size_t> pos;
    pos.reserve(ids.size());
    for (const auto& id : ids) pos.push_back(position(id));

    const std::size_t n = ids.size();
    SimilarityMatrix m{ids, std::vector<double>(n * n, 0.0)};
    // row i computes the upper triangle j >= i
    parallel_for(n, options_.workers, [&](std::size_t i) {
        for (std::size_t j = i; j < n; ++j) m.scores[i * n + j] = score(pos[i], pos[j]).combined;
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) m.scores[i * n + j] = m.scores[j * n + i];
    return m;
}

std::vector<RankedCrisis> top_k(const KnowledgeBase& kb, std::string_view query_id, std::size_t k,
                                const EmbeddingTable& table, const ScoringOptions& options) {
    if (!kb.has_crisis(query_id)) throw UnknownCrisis(std::string(query_id));
    return SimilarityEngine(kb, table, options).top_k(query_id, k);
}

SimilarityMatrix matrix(const KnowledgeBase& kb, const std::vector<std::string>& ids,
                        const EmbeddingTable& table, const ScoringOptions& options) {
    for (const auto& id : ids)
        if (!kb.has_crisis(id)) throw UnknownCrisis(id);
    return SimilarityEngine(kb, table, options).matrix(ids);
}

void write_matrix_csv(const SimilarityMatrix& m, std::ostream& out) {
    out << "id";
    for (const auto& id : m.ids) out << ',' << id;
    out << '\n';
    char buf[32];
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.ids[i];
        for (std::size_t j = 0; j < m.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.6f", m.at(i, j));
            out << ',' << buf;
        }
        out << '\n';
    }
}

void write_topk_jsonl(std::string_view query, const std::vector<RankedCrisis>& ranked, std::ostream& out) {
    for (std::size_t r = 0; r < ranked.size(); ++r) {
        nlohmann::ordered_json line;
        line["query"] = query;
        line["rank"] = r + 1;
        line["id"] = ranked[r].id;
        line["combined"] = ranked[r].score.combined;
        line["qualitative_avg"] = ranked[r].score.qualitative_avg;
        line["quantitative_avg"] = ranked[r].score.quantitative_avg;
        out << line.dump() << '\n';
    }
}

}  // namespace crisim
