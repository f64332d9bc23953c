#include <gtest/gtest.h>

#include <sstream>

#include "crisim/error.hpp"
#include "crisim/schema.hpp"
#include "crisim/turtle.hpp"
#include "support.hpp"

using namespace crisim;
using testing_support::fixture_kb;
using testing_support::fixture;

namespace {

Triple deaths(const std::string& id, double n) { return {crisis_iri(id), vocab::kDeaths, Quantitative{{n}}}; }

KnowledgeBase small_kb() {
    KnowledgeBase kb;
    kb.insert({crisis_iri("a"), vocab::kType, Qualitative{"Flood"}});
    kb.insert({crisis_iri("a"), vocab::kCountry, Qualitative{"France"}});
    kb.insert(deaths("a", 3));
    kb.insert({crisis_iri("b"), vocab::kType, Qualitative{"Storm"}});
    kb.insert({crisis_iri("b"), vocab::kCoordinates, Quantitative{{43.5, -1.25}}});
    return kb;
}

}  // namespace

TEST(KnowledgeBase, InsertHasSetSemantics) {
    KnowledgeBase kb;
    EXPECT_TRUE(kb.insert(deaths("x", 1)));
    EXPECT_FALSE(kb.insert(deaths("x", 1)));
    EXPECT_EQ(kb.stats().statements, 1u);
}

TEST(KnowledgeBase, UnknownPredicateRejected) {
    KnowledgeBase kb;
    EXPECT_THROW(kb.insert({crisis_iri("x"), ns::kOntology + "hasColour", Qualitative{"red"}}), SchemaViolation);
    EXPECT_TRUE(kb.empty());
}

TEST(KnowledgeBase, IllTypedObjectsRejected) {
    KnowledgeBase kb;
    EXPECT_THROW(kb.insert({crisis_iri("x"), vocab::kDeaths, Qualitative{"many"}}), SchemaViolation);
    EXPECT_THROW(kb.insert({crisis_iri("x"), vocab::kCoordinates, Quantitative{{1.0}}}), SchemaViolation);
    EXPECT_THROW(kb.insert({crisis_iri("x"), vocab::kDeaths, Quantitative{{1.5}}}), SchemaViolation);
    EXPECT_THROW(kb.insert({crisis_iri("x"), vocab::kCountry, Qualitative{""}}), SchemaViolation);
    EXPECT_THROW(kb.insert({crisis_iri("x"), vocab::kType, Qualitative{"Volcano Party"}}), SchemaViolation);
    EXPECT_THROW(kb.insert({"", vocab::kDeaths, Quantitative{{1}}}), SchemaViolation);
}

TEST(KnowledgeBase, SubjectIndexContainsInsertedTriple) {
    KnowledgeBase kb;
    kb.insert(deaths("x", 1));
    const auto found = kb.by_subject(crisis_iri("x"));
    ASSERT_EQ(found.size(), 1u);
    EXPECT_EQ(found[0], deaths("x", 1));
    EXPECT_EQ(kb.by_predicate(vocab::kDeaths).size(), 1u);
}

TEST(KnowledgeBase, SubgraphUnknownCrisis) {
    EXPECT_THROW(small_kb().crisis_subgraph("no_such_id"), UnknownCrisis);
}

TEST(KnowledgeBase, SubgraphIsCanonical) {
    const auto kb = small_kb();
    const auto s = kb.crisis_subgraph("a");
    EXPECT_EQ(s.crisis_id, "a");
    ASSERT_EQ(s.size(), 3u);
    EXPECT_TRUE(std::is_sorted(s.triples.begin(), s.triples.end(), canonical_less));
    EXPECT_EQ(s, kb.crisis_subgraph("a"));
}

TEST(KnowledgeBase, SubgraphMatchesRecordTriples) {
    const auto& kb = fixture_kb();
    for (const auto& r : testing_support::fixture_csv().records)
        EXPECT_EQ(kb.crisis_subgraph(r.crisis_id), record_to_triples(r, kb.taxonomy()));
}

TEST(KnowledgeBase, SubgraphsPartitionTheKb) {
    const auto& kb = fixture_kb();
    std::set<Triple> seen;
    std::size_t total = 0;
    for (const auto& id : kb.crisis_ids()) {
        for (const auto& t : kb.crisis_subgraph(id).triples) {
            EXPECT_TRUE(seen.insert(t).second);
            ++total;
        }
    }
    const auto taxonomy_statements = kb.taxonomy().size() - 1;
    for (const auto& t : kb.by_predicate(vocab::kSubClassOf)) seen.insert(t);
    EXPECT_EQ(seen, kb.triples());
    EXPECT_EQ(kb.stats().statements, total + taxonomy_statements);
}

TEST(KnowledgeBase, EmptyStats) {
    KnowledgeBase kb;
    kb.assert_taxonomy();
    const auto s = kb.stats();
    EXPECT_EQ(s.individuals, 0u);
    EXPECT_EQ(s.classes, kb.taxonomy().size());
    EXPECT_EQ(s.statements, kb.taxonomy().size() - 1);
    EXPECT_EQ(KnowledgeBase().stats(), KbStats{});
}

TEST(KnowledgeBase, FixtureStats) {
    const auto s = fixture_kb().stats();
    EXPECT_GE(s.individuals, 287u);
    EXPECT_EQ(s.individuals, 287u);
    EXPECT_EQ(s.statements, fixture_kb().size());
    EXPECT_EQ(s.object_properties, 2u);
    EXPECT_EQ(s.data_properties, 19u);

    const auto committed = parse_turtle(testing_support::slurp(fixture("taxonomy.ttl")));
    std::set<std::string> nodes;
    for (const auto& t : committed.triples()) {
        nodes.insert(std::string(local_name(t.subject)));
        nodes.insert(committed.taxonomy().find_by_label(std::get<Qualitative>(t.object).text)->id);
    }
    EXPECT_EQ(s.classes, nodes.size());
}

TEST(KnowledgeBase, ListCrisesFilters) {
    const auto& kb = fixture_kb();
    EXPECT_EQ(kb.list_crises({}).size(), 287u);
    EXPECT_EQ(kb.list_crises({}), kb.crisis_ids());
    EXPECT_EQ(kb.list_crises({.type = "Hydrological"}).size(), 60u);
    EXPECT_EQ(kb.list_crises({.type = "Flood"}).size(), 60u);
    EXPECT_EQ(kb.list_crises({.type = "ManMade"}).size(), 14u + 24 + 54);
    EXPECT_EQ(kb.list_crises({.country = "FRANCE"}).size(), 287u);
    EXPECT_TRUE(kb.list_crises({.years = std::pair(1700, 1800)}).empty());
    const auto ids = kb.list_crises({.type = "Storm", .years = std::pair(1990, 2000)});
    EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
    EXPECT_FALSE(ids.empty());
    for (const auto& id : ids) EXPECT_TRUE(kb.taxonomy().is_ancestor_or_self("Storm", kb.crisis_type(id).id));
}

TEST(KnowledgeBase, RemoveSubject) {
    auto kb = small_kb();
    EXPECT_EQ(kb.remove_subject(crisis_iri("a")), 3u);
    EXPECT_FALSE(kb.has_crisis("a"));
    EXPECT_TRUE(kb.by_predicate(vocab::kDeaths).empty());
    EXPECT_EQ(kb.crisis_ids(), std::vector<std::string>{"b"});
}

TEST(Turtle, EmptyKbIsPrefixHeaderOnly) {
    const auto text = to_turtle(KnowledgeBase());
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) EXPECT_TRUE(line.empty() || line.rfind("@prefix", 0) == 0) << line;
    EXPECT_NE(text.find("@prefix"), std::string::npos);
}

TEST(Turtle, BrokenPrefixReportsLineOne) {
    try {
        parse_turtle("@prefix broken");
        FAIL();
    } catch (const TurtleSyntaxError& e) {
        EXPECT_EQ(e.line(), 1u);
    }
}

TEST(Turtle, ErrorPositions) {
    try {
        parse_turtle("@prefix cr: <http://example.org/crisim/ontology#> .\n\n<x> cr:hasDeaths \"3 .\n");
        FAIL();
    } catch (const TurtleSyntaxError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(parse_turtle("<a> <b> <c>"), TurtleSyntaxError);
    EXPECT_THROW(parse_turtle("nope:x <b> <c> ."), TurtleSyntaxError);
}

TEST(Turtle, SmallRoundTrip) {
    const auto kb = small_kb();
    const auto text = to_turtle(kb);
    EXPECT_EQ(parse_turtle(text).triples(), kb.triples());
    EXPECT_NE(text.find("a cr:Flood"), std::string::npos);
    EXPECT_NE(text.find("\"43.5 -1.25\"^^cr:vector"), std::string::npos);
}

TEST(Turtle, FixtureRoundTripIsStable) {
    const auto& kb = fixture_kb();
    const auto text = to_turtle(kb);
    const auto back = parse_turtle(text);
    EXPECT_EQ(back.stats().statements, kb.stats().statements);
    EXPECT_EQ(back.triples(), kb.triples());
    EXPECT_EQ(to_turtle(back), text);
}

TEST(Turtle, InsertionOrderDoesNotChangeBytes) {
    const auto& kb = fixture_kb();
    KnowledgeBase reversed;
    const std::vector<Triple> all(kb.triples().begin(), kb.triples().end());
    for (auto it = all.rbegin(); it != all.rend(); ++it) reversed.insert(*it);
    EXPECT_EQ(to_turtle(reversed), to_turtle(kb));
}

TEST(Turtle, SubgraphSerializationIsByteStable) {
    const auto& kb = fixture_kb();
    std::ostringstream a, b;
    serialize_turtle(kb.crisis_subgraph("80_RiverineFlood"), kb.taxonomy(), a);
    serialize_turtle(kb.crisis_subgraph("80_RiverineFlood"), kb.taxonomy(), b);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(parse_turtle(a.str()).crisis_subgraph("80_RiverineFlood"), kb.crisis_subgraph("80_RiverineFlood"));
}

TEST(Turtle, AcceptsGeneralSyntax) {
    const std::string text = R"(PREFIX cr: <http://example.org/crisim/ontology#>
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
# comment
<http://example.org/crisim/kb/q> cr:hasCountry "Fränce"@fr , """multi
line""" ;
  cr:hasDeaths "12"^^xsd:integer ;
  cr:hasMagnitudeValue 1.5e2 ;
  a <http://example.org/crisim/ontology#Flood> .
)";
    const auto kb = parse_turtle(text);
    EXPECT_EQ(kb.size(), 5u);
    EXPECT_TRUE(kb.contains({crisis_iri("q"), vocab::kCountry, Qualitative{"Fränce"}}));
    EXPECT_TRUE(kb.contains({crisis_iri("q"), vocab::kCountry, Qualitative{"multi\nline"}}));
    EXPECT_TRUE(kb.contains({crisis_iri("q"), vocab::kMagnitudeValue, Quantitative{{150}}}));
    EXPECT_TRUE(kb.contains({crisis_iri("q"), vocab::kDeaths, Quantitative{{12}}}));
}

TEST(Turtle, SchemaViolationsSurface) {
    EXPECT_THROW(parse_turtle("<http://example.org/crisim/kb/q> <http://example.org/other> \"x\" ."), SchemaViolation);
    EXPECT_THROW(parse_turtle("_:b <http://example.org/crisim/ontology#hasCountry> _:c ."), SchemaViolation);
}

TEST(Turtle, EscapesRoundTrip) {
    KnowledgeBase kb;
    kb.insert({crisis_iri("e"), vocab::kLocation, Qualitative{"quote \" backslash \\ tab\t newline\n é"}});
    EXPECT_EQ(parse_turtle(to_turtle(kb)).triples(), kb.triples());
}

TEST(Turtle, NumbersRoundTripExactly) {
    KnowledgeBase kb;
    kb.insert({crisis_iri("n"), vocab::kMagnitudeValue, Quantitative{{0.1}}});
    kb.insert({crisis_iri("n"), vocab::kTotalDamages, Quantitative{{1e21}}});
    kb.insert({crisis_iri("n"), vocab::kCoordinates, Quantitative{{-33.333333333333336, 1e-7}}});
    kb.insert({crisis_iri("n"), vocab::kStartDate, Quantitative{{-3}}});
    EXPECT_EQ(parse_turtle(to_turtle(kb)).triples(), kb.triples());
}

TEST(Turtle, TaxonomyExport) {
    std::ostringstream out;
    serialize_taxonomy(build_taxonomy(), out);
    EXPECT_EQ(out.str(), testing_support::slurp(fixture("taxonomy.ttl")));
    const auto kb = parse_turtle(out.str());
    EXPECT_EQ(kb.size(), build_taxonomy().size() - 1);
}
