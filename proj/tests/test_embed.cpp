#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "crisim/csv.hpp"
#include "crisim/embedding.hpp"
#include "crisim/error.hpp"
#include "crisim/tokenize.hpp"
#include "support.hpp"

using namespace crisim;
using testing_support::fixture;
using testing_support::toy_table;

namespace {

TokenSeq toks(std::initializer_list<const char*> words) { return {words.begin(), words.end()}; }

EmbeddingTable load(const std::string& text, EmbeddingLoadOptions opts = {}) {
    std::istringstream in(text);
    return load_embeddings(in, opts);
}

std::string random_text(std::mt19937_64& rng) {
    static const std::vector<std::string> pieces = {"Flood", "riverine", "_", " ", "-", "80", "ABC", "Word",
                                                    "é", "Île", "x1", "9", ".", "Storm", "ÉTÉ", "camelCase"};
    std::string s;
    const auto n = rng() % 8;
    for (std::size_t i = 0; i < n; ++i) s += pieces[rng() % pieces.size()];
    return s;
}

}  // namespace

TEST(Tokenize, CamelCase) { EXPECT_EQ(tokenize("RiverineFlood", TextKind::LocalName), toks({"riverine", "flood"})); }

TEST(Tokenize, EventIdDropsSequenceNumber) {
    EXPECT_EQ(tokenize("80_RiverineFlood", TextKind::LocalName), toks({"riverine", "flood"}));
}

TEST(Tokenize, AccentedPunctuation) {
    EXPECT_EQ(tokenize("Île-de-France"), toks({"île", "de", "france"}));
}

TEST(Tokenize, LiteralsKeepDigits) {
    EXPECT_EQ(tokenize("Storm Xynthia 2010"), toks({"storm", "xynthia", "2010"}));
    EXPECT_EQ(tokenize("hasDeaths", TextKind::LocalName), toks({"has", "deaths"}));
    EXPECT_EQ(tokenize("HTTPServer v2"), toks({"http", "server", "v", "2"}));
}

TEST(Tokenize, EmptyAndSeparatorsOnly) {
    EXPECT_TRUE(tokenize("").empty());
    EXPECT_TRUE(tokenize(" -_/ ").empty());
    EXPECT_TRUE(tokenize("2021", TextKind::LocalName).empty());
}

TEST(Tokenize, IdempotentProperty) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const auto text = random_text(rng);
        for (const auto kind : {TextKind::Literal, TextKind::LocalName}) {
            const auto once = tokenize(text, kind);
            std::string joined;
            for (const auto& t : once) joined += t + " ";
            EXPECT_EQ(tokenize(joined, kind), once) << text;
            for (const auto& t : once) {
                EXPECT_FALSE(t.empty());
                EXPECT_EQ(t.find(' '), std::string::npos);
            }
        }
    }
}

TEST(LoadEmbeddings, TwoLines) {
    const auto t = load("flood 1 0 0 0\nstorm 0 1 0 0\n");
    EXPECT_EQ(t.dimension(), 4u);
    EXPECT_EQ(t.size(), 2u);
}

TEST(LoadEmbeddings, ArityMismatchAfterHeaderNamesLine) {
    try {
        load("2 4\nflood 1 0 0 0\nstorm 0 1 0\n", {.dimension = 4});
        FAIL();
    } catch (const DimensionMismatch& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(load("flood 1 0 0 0\nstorm 0 1 0\n"), DimensionMismatch);
}

TEST(LoadEmbeddings, EmptyFile) {
    EXPECT_THROW(load(""), EmptyFile);
    EXPECT_THROW(load("\n\n"), EmptyFile);
}

TEST(LoadEmbeddings, DuplicatesKeepFirstWithWarning) {
    std::istringstream in("Flood 1 0\nflood 0 1\n");
    std::vector<std::string> warnings;
    const auto t = load_embeddings(in, {}, &warnings);
    EXPECT_EQ(t.size(), 1u);
    EXPECT_EQ(warnings.size(), 1u);
    EXPECT_EQ(t.vector(*t.index_of("flood"))[0], 1.0);
}

TEST(LoadEmbeddings, BadNumber) { EXPECT_THROW(load("flood 1 zero\n"), Error); }

TEST(LoadEmbeddings, ToyFixture) {
    EXPECT_EQ(toy_table().size(), 20u);
    EXPECT_EQ(toy_table().dimension(), 4u);
}

TEST(WordSim, Identity) { EXPECT_EQ(word_sim("flood", "flood", toy_table()), 1.0); }

TEST(WordSim, ToyCosine) { EXPECT_NEAR(word_sim("flood", "riverine", toy_table()), 0.8, 1e-12); }

TEST(WordSim, OutOfVocabulary) {
    EXPECT_EQ(word_sim("flood", "zzz-oov", toy_table()), 0.0);
    EXPECT_EQ(word_sim("paris", "paris", toy_table()), 1.0);
    EXPECT_EQ(word_sim("paris", "lyon", toy_table()), 0.0);
}

TEST(WordSim, MatchesSidecarOracle) {
    const auto rows = csv::read(testing_support::slurp(fixture("toy_vectors.oracle.csv")));
    ASSERT_EQ(rows.size(), 1u + 20 * 19 / 2);
    std::size_t negative = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i].fields;
        const double clamped = std::stod(f[3]);
        if (std::stod(f[2]) < 0) ++negative;
        EXPECT_NEAR(word_sim(f[0], f[1], toy_table()), clamped, 1e-12) << f[0] << " " << f[1];
    }
    EXPECT_GT(negative, 0u);
}

TEST(WordSim, SymmetricAndBounded) {
    const auto& t = toy_table();
    std::vector<std::string> words;
    for (std::size_t i = 0; i < t.size(); ++i) words.push_back(t.token(i));
    words.push_back("oov-a");
    words.push_back("oov-b");
    for (const auto& a : words) {
        for (const auto& b : words) {
            const double s = word_sim(a, b, t);
            EXPECT_EQ(s, word_sim(b, a, t));
            EXPECT_GE(s, 0.0);
            EXPECT_LE(s, 1.0);
        }
        EXPECT_EQ(word_sim(a, a, t), 1.0);
    }
}

TEST(WordPhraseSim, SelfMatchDominates) {
    EXPECT_EQ(word_to_phrase_sim("flood", toks({"riverine", "flood"}), toy_table()), 1.0);
}

TEST(WordPhraseSim, ToyValue) { EXPECT_NEAR(word_to_phrase_sim("storm", toks({"flood"}), toy_table()), 0.3, 1e-12); }

TEST(WordPhraseSim, EmptyPhraseThrows) { EXPECT_THROW(word_to_phrase_sim("flood", {}, toy_table()), EmptyPhrase); }

TEST(WordPhraseSim, MaxProperty) {
    const auto& t = toy_table();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        TokenSeq phrase;
        const auto n = 1 + rng() % 5;
        for (std::size_t k = 0; k < n; ++k) phrase.push_back(rng() % 5 == 0 ? "oov" : t.token(rng() % t.size()));
        const auto w = t.token(rng() % t.size());
        const double best = word_to_phrase_sim(w, phrase, t);
        bool attained = false;
        for (const auto& q : phrase) {
            EXPECT_GE(best, word_sim(w, q, t));
            attained = attained || best == word_sim(w, q, t);
        }
        EXPECT_TRUE(attained);
    }
}
