#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "crisim/error.hpp"
#include "crisim/ranking.hpp"
#include "crisim/schema.hpp"
#include "reference/naive_similarity.hpp"
#include "support.hpp"

using namespace crisim;
using testing_support::fixture_kb;
using testing_support::toy_table;

namespace {

Triple qual(const std::string& id, const std::string& predicate, const std::string& text) {
    return {crisis_iri(id), predicate, Qualitative{text}};
}

Triple quant(const std::string& id, const std::string& predicate, std::vector<double> v) {
    return {crisis_iri(id), predicate, Quantitative{std::move(v)}};
}

TripleSet set_of(const std::string& id, std::vector<Triple> triples) { return {id, std::move(triples)}; }

const SimilarityEngine& engine() {
    static const SimilarityEngine e(fixture_kb(), toy_table());
    return e;
}

}  // namespace

TEST(ClassifyTriple, Kinds) {
    EXPECT_EQ(classify_triple(quant("c", vocab::kDeaths, {12})), TripleKind::Quantitative);
    EXPECT_EQ(classify_triple(qual("c", vocab::kCountry, "France")), TripleKind::Qualitative);
    EXPECT_EQ(classify_triple(quant("c", vocab::kCoordinates, {48.85, 2.35})), TripleKind::Quantitative);
}

TEST(SimQualitative, IdenticalTriples) {
    const auto t = qual("80_RiverineFlood", vocab::kLocation, "Paris, Île-de-France");
    EXPECT_EQ(sim_qualitative(t, t, toy_table()), 1.0);
}

TEST(SimQualitative, HandValueOnTokens) {
    // (1 + 0.8 + 1) / 3 with cos(flood, riverine) = 0.8
    EXPECT_NEAR(token_set_similarity({"flood"}, {"riverine", "flood"}, toy_table()), 14.0 / 15.0, 1e-12);
}

TEST(SimQualitative, SymmetricSwap) {
    const auto a = qual("1_Storm", vocab::kTriggerOrigin, "Heavy rains storm");
    const auto b = qual("2_FlashFlood", vocab::kTriggerOrigin, "flood after drought");
    EXPECT_EQ(sim_qualitative(a, b, toy_table()), sim_qualitative(b, a, toy_table()));
}

TEST(SimQualitative, EmptyTokensThrow) {
    EXPECT_THROW(token_set_similarity({}, {"flood"}, toy_table()), EmptyPhrase);
}

TEST(SimQuantitative, Values) {
    EXPECT_EQ(sim_quantitative(std::vector{2.0, 3.0}, std::vector{2.0, 3.0}), 1.0);
    EXPECT_NEAR(sim_quantitative(std::vector{0.0, 0.0}, std::vector{3.0, 4.0}), 1.0 / 6.0, 1e-12);
    EXPECT_THROW(sim_quantitative(std::vector{1.0}, std::vector{1.0, 2.0}), DimensionMismatch);
}

TEST(SimQuantitative, StrictlyDecreasingInDistance) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-100, 100);
    for (int i = 0; i < 500; ++i) {
        const std::vector<double> a = {u(rng), u(rng)};
        const std::vector<double> dir = {u(rng), u(rng)};
        double prev = 2;
        for (double step = 0.0; step < 5; step += 0.5) {
            const std::vector<double> b = {a[0] + step * dir[0], a[1] + step * dir[1]};
            const double s = sim_quantitative(a, b);
            EXPECT_LT(s, prev);
            EXPECT_GT(s, 0.0);
            prev = s;
        }
    }
}

TEST(Align, IdenticalPredicatesAreTwoSided) {
    const auto c = fixture_kb().crisis_subgraph("80_RiverineFlood");
    const auto pairs = align(c, c, toy_table());
    EXPECT_EQ(pairs.size(), c.size());
    for (const auto& p : pairs) EXPECT_TRUE(p.two_sided());
    EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end(),
                               [](const auto& a, const auto& b) { return a.predicate < b.predicate; }));
}

TEST(Align, OneSidedPredicate) {
    const auto a = set_of("a", {qual("a", vocab::kCountry, "France"), quant("a", vocab::kDeaths, {3})});
    const auto b = set_of("b", {qual("b", vocab::kCountry, "France")});
    const auto pairs = align(a, b, toy_table());
    ASSERT_EQ(pairs.size(), 2u);
    const auto& deaths = pairs[0].predicate == vocab::kDeaths ? pairs[0] : pairs[1];
    EXPECT_TRUE(deaths.left);
    EXPECT_FALSE(deaths.right);
}

TEST(Align, MultiValuedGreedy) {
    const auto a = set_of("a", {qual("a", vocab::kLocation, "flood"), qual("a", vocab::kLocation, "storm"),
                                qual("a", vocab::kLocation, "drought")});
    const auto b = set_of("b", {qual("b", vocab::kLocation, "storm"), qual("b", vocab::kLocation, "riverine")});
    const auto pairs = align(a, b, toy_table());
    ASSERT_EQ(pairs.size(), 3u);
    std::map<std::string, std::string> matched;
    std::size_t one_sided = 0;
    for (const auto& p : pairs) {
        if (!p.two_sided()) {
            ++one_sided;
            continue;
        }
        matched[std::get<Qualitative>(p.left->object).text] = std::get<Qualitative>(p.right->object).text;
    }
    EXPECT_EQ(one_sided, 1u);
    EXPECT_EQ(matched["storm"], "storm");
    EXPECT_EQ(matched["flood"], "riverine");
}

TEST(Align, MirrorSymmetry) {
    const auto& kb = fixture_kb();
    const auto ids = kb.crisis_ids();
    for (std::size_t i = 0; i + 1 < ids.size(); i += 23) {
        const auto a = kb.crisis_subgraph(ids[i]);
        const auto b = kb.crisis_subgraph(ids[i + 1]);
        const auto ab = align(a, b, toy_table());
        const auto ba = align(b, a, toy_table());
        ASSERT_EQ(ab.size(), ba.size());
        for (std::size_t k = 0; k < ab.size(); ++k) {
            EXPECT_EQ(ab[k].predicate, ba[k].predicate);
            EXPECT_EQ(ab[k].left, ba[k].right);
            EXPECT_EQ(ab[k].right, ba[k].left);
        }
    }
}

TEST(SimSets, IdentityIsTwo) {
    const auto c = fixture_kb().crisis_subgraph("80_RiverineFlood");
    const auto s = sim_sets(c, c, toy_table());
    EXPECT_EQ(s.combined, 2.0);
    EXPECT_EQ(s.normalized, 1.0);
}

TEST(SimSets, SingleQualitativeTriples) {
    // digit-only subjects tokenize to nothing
    const auto a = set_of("1", {qual("1", vocab::kCountry, "Flood")});
    const auto b = set_of("2", {qual("2", vocab::kCountry, "Riverine Flood")});
    const auto s = sim_sets(a, b, toy_table());
    // tokens [has, country, flood] vs [has, country, riverine, flood]: (3 + 3 + 0.8) / 7
    EXPECT_NEAR(s.combined, 6.8 / 7.0, 1e-12);
    EXPECT_EQ(s.quantitative_pairs, 0u);
    EXPECT_EQ(s.qualitative_pairs, 1u);
    EXPECT_EQ(s.quantitative_avg, 0.0);
}

TEST(SimSets, NoSharedPredicatesIsZero) {
    const auto a = set_of("a", {qual("a", vocab::kCountry, "France")});
    const auto b = set_of("b", {quant("b", vocab::kDeaths, {3})});
    const auto s = sim_sets(a, b, toy_table());
    EXPECT_EQ(s.combined, 0.0);
    EXPECT_EQ(s.qualitative_pairs + s.quantitative_pairs, 2u);
}

TEST(SimSets, EmptySetThrows) {
    const auto a = set_of("a", {qual("a", vocab::kCountry, "France")});
    EXPECT_THROW(sim_sets(a, TripleSet{"b", {}}, toy_table()), EmptySet);
}

TEST(SimSets, NormalizedQuantUsesScaledValues) {
    const auto a = set_of("a", {quant("a", vocab::kDeaths, {0})});
    const auto b = set_of("b", {quant("b", vocab::kDeaths, {1000})});
    EXPECT_NEAR(sim_sets(a, b, toy_table()).combined, 1.0 / 1001.0, 1e-15);
    ScoringOptions opts;
    opts.normalize_quant = true;
    EXPECT_NEAR(sim_sets(a, b, toy_table(), opts).combined, 0.5, 1e-15);
}

TEST(SimSets, BoundsSymmetryAndNaiveOracle) {
    const auto& kb = fixture_kb();
    const auto ids = kb.crisis_ids();
    std::mt19937_64 rng(42);
    for (int n = 0; n < 200; ++n) {
        const auto a = kb.crisis_subgraph(ids[rng() % ids.size()]);
        const auto b = kb.crisis_subgraph(ids[rng() % ids.size()]);
        const auto s = sim_sets(a, b, toy_table());
        const auto r = sim_sets(b, a, toy_table());
        EXPECT_EQ(s.combined, r.combined);
        EXPECT_GE(s.qualitative_avg, 0.0);
        EXPECT_LE(s.qualitative_avg, 1.0);
        EXPECT_GE(s.quantitative_avg, 0.0);
        EXPECT_LE(s.quantitative_avg, 1.0);
        EXPECT_EQ(s.combined, s.qualitative_avg + s.quantitative_avg);
        EXPECT_GE(s.qualitative_pairs + s.quantitative_pairs, 1u);

        const auto o = naive::sim_sets(a, b, toy_table());
        EXPECT_NEAR(s.combined, o.combined, 1e-12);
        EXPECT_EQ(s.qualitative_pairs, o.L);
        EXPECT_EQ(s.quantitative_pairs, o.H);
    }
}

TEST(Engine, MatchesSimSets) {
    const auto& kb = fixture_kb();
    const auto ids = kb.crisis_ids();
    for (std::size_t i = 0; i < ids.size(); i += 13) {
        for (std::size_t j = 0; j < ids.size(); j += 17) {
            const auto e = engine().score(ids[i], ids[j]);
            const auto s = sim_sets(kb.crisis_subgraph(ids[i]), kb.crisis_subgraph(ids[j]), toy_table());
            EXPECT_EQ(e.combined, s.combined);
            EXPECT_EQ(e.normalized, s.normalized);
            EXPECT_EQ(e.qualitative_pairs, s.qualitative_pairs);
        }
    }
}

TEST(Engine, NormalizedQuantMatchesCorpusScaler) {
    const auto& kb = fixture_kb();
    std::vector<TripleSet> sets;
    for (const auto& id : kb.crisis_ids()) sets.push_back(kb.crisis_subgraph(id));
    const auto scaler = QuantScaler::fit(sets);
    ScoringOptions opts;
    opts.normalize_quant = true;
    const SimilarityEngine e(kb, toy_table(), opts);
    opts.scaler = &scaler;
    for (std::size_t i = 0; i + 7 < sets.size(); i += 31) {
        const auto s = sim_sets(sets[i], sets[i + 7], toy_table(), opts);
        EXPECT_EQ(e.score(sets[i].crisis_id, sets[i + 7].crisis_id).combined, s.combined);
        EXPECT_LE(s.quantitative_avg, 1.0);
    }
}

TEST(Engine, UnknownCrisis) {
    EXPECT_THROW(engine().score("80_RiverineFlood", "nope"), UnknownCrisis);
    EXPECT_THROW(engine().top_k("nope", 3), UnknownCrisis);
    EXPECT_THROW(engine().matrix({"nope"}), UnknownCrisis);
}

TEST(TopK, RiverineFloodNeighbourIsFlood) {
    const auto ranked = engine().top_k("80_RiverineFlood", 5);
    ASSERT_EQ(ranked.size(), 5u);
    const auto& kb = fixture_kb();
    EXPECT_TRUE(kb.taxonomy().is_ancestor_or_self("Flood", kb.crisis_type(ranked[0].id).id)) << ranked[0].id;
    for (const auto& r : ranked) EXPECT_NE(r.id, "80_RiverineFlood");
}

TEST(TopK, OrderingContract) {
    const auto ranked = engine().top_k("83_Flood", 1000);
    EXPECT_EQ(ranked.size(), 286u);
    for (std::size_t i = 1; i < ranked.size(); ++i) {
        const auto& a = ranked[i - 1];
        const auto& b = ranked[i];
        EXPECT_TRUE(a.score.combined > b.score.combined || (a.score.combined == b.score.combined && a.id < b.id));
    }
    EXPECT_EQ(top_k(fixture_kb(), "83_Flood", 3, toy_table()).size(), 3u);
}

TEST(TopK, WorkerCountDoesNotChangeResult) {
    ScoringOptions four;
    four.workers = 4;
    const SimilarityEngine parallel(fixture_kb(), toy_table(), four);
    std::ostringstream a, b;
    write_topk_jsonl("80_RiverineFlood", engine().top_k("80_RiverineFlood", 50), a);
    write_topk_jsonl("80_RiverineFlood", parallel.top_k("80_RiverineFlood", 50), b);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Matrix, SingleEntryIsSelfSimilarity) {
    const auto m = engine().matrix({"80_RiverineFlood"});
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.at(0, 0), 2.0);
}

TEST(Matrix, SymmetricWithMaximalDiagonal) {
    const auto m = engine().matrix(fixture_kb().crisis_ids());
    for (std::size_t i = 0; i < m.size(); ++i) {
        double row_max = 0;
        for (std::size_t j = 0; j < m.size(); ++j) {
            EXPECT_EQ(m.at(i, j), m.at(j, i));
            row_max = std::max(row_max, m.at(i, j));
        }
        EXPECT_EQ(m.at(i, i), row_max);
    }
}

TEST(Matrix, ParallelOutputIsByteIdentical) {
    const auto ids = fixture_kb().crisis_ids();
    std::string reference;
    for (const std::size_t workers : {1u, 2u, 3u, 8u}) {
        ScoringOptions o;
        o.workers = workers;
        std::ostringstream out;
        write_matrix_csv(matrix(fixture_kb(), ids, toy_table(), o), out);
        if (reference.empty()) reference = out.str();
        EXPECT_EQ(out.str(), reference) << workers;
    }
}

TEST(Matrix, CsvLayout) {
    const auto m = engine().matrix({"80_RiverineFlood", "83_Flood"});
    std::ostringstream out;
    write_matrix_csv(m, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "id,80_RiverineFlood,83_Flood");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("80_RiverineFlood,2.000000,", 0), 0u) << line;
}

TEST(Matrix, SameTypeMeanExceedsCrossType) {
    const auto& kb = fixture_kb();
    const auto ids = kb.crisis_ids();
    const auto m = engine().matrix(ids);
    double same = 0, cross = 0;
    std::size_t ns = 0, nc = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            const bool s = kb.taxonomy().type_node(kb.taxonomy().path_to(kb.crisis_type(ids[i]).id)).id ==
                           kb.taxonomy().type_node(kb.taxonomy().path_to(kb.crisis_type(ids[j]).id)).id;
            (s ? same : cross) += m.at(i, j);
            ++(s ? ns : nc);
        }
    }
    EXPECT_GT(same / static_cast<double>(ns), cross / static_cast<double>(nc));
}
