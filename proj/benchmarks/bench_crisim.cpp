#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "crisim/fixture.hpp"
#include "crisim/ingest.hpp"
#include "crisim/ranking.hpp"
#include "crisim/turtle.hpp"

using namespace crisim;

namespace {

const Taxonomy& tax() {
    static const Taxonomy t = build_taxonomy();
    return t;
}

const std::string& fixture_csv() {
    static const std::string text = [] {
        std::ostringstream out;
        write_csv(out, generate_fixture(tax()), CsvSchema::emdat(), tax());
        return out.str();
    }();
    return text;
}

const KnowledgeBase& kb() {
    static const KnowledgeBase k = [] {
        KnowledgeBase b;
        b.assert_taxonomy();
        ingest_corpus(generate_fixture(tax()), b);
        return b;
    }();
    return k;
}

const EmbeddingTable& table() {
    static const EmbeddingTable t = load_embeddings(std::filesystem::path(CRISIM_FIXTURE_DIR "/toy_vectors.txt"));
    return t;
}

void BM_Tokenize(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(tokenize("80_RiverineFlood Île-de-France hasInsuredLosses"));
}
BENCHMARK(BM_Tokenize);

void BM_ParseCsv(benchmark::State& state) {
    for (auto _ : state) {
        std::istringstream in(fixture_csv());
        benchmark::DoNotOptimize(parse_csv(in, CsvSchema::emdat(), tax()));
    }
}
BENCHMARK(BM_ParseCsv)->Unit(benchmark::kMillisecond);

void BM_SerializeTurtle(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(to_turtle(kb()));
}
BENCHMARK(BM_SerializeTurtle)->Unit(benchmark::kMillisecond);

void BM_ParseTurtle(benchmark::State& state) {
    const auto text = to_turtle(kb());
    for (auto _ : state) benchmark::DoNotOptimize(parse_turtle(text));
}
BENCHMARK(BM_ParseTurtle)->Unit(benchmark::kMillisecond);

void BM_SimSets(benchmark::State& state) {
    const auto a = kb().crisis_subgraph("80_RiverineFlood");
    const auto b = kb().crisis_subgraph("83_Flood");
    for (auto _ : state) benchmark::DoNotOptimize(sim_sets(a, b, table()));
}
BENCHMARK(BM_SimSets);

void BM_EnginePair(benchmark::State& state) {
    const SimilarityEngine engine(kb(), table());
    for (auto _ : state) benchmark::DoNotOptimize(engine.score("80_RiverineFlood", "83_Flood"));
}
BENCHMARK(BM_EnginePair);

void BM_Matrix(benchmark::State& state) {
    ScoringOptions opts;
    opts.workers = static_cast<std::size_t>(state.range(0));
    const SimilarityEngine engine(kb(), table(), opts);
    const auto ids = kb().crisis_ids();
    for (auto _ : state) benchmark::DoNotOptimize(engine.matrix(ids));
}
BENCHMARK(BM_Matrix)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
