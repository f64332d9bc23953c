#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "crisim/embedding.hpp"
#include "crisim/error.hpp"
#include "crisim/ingest.hpp"
#include "crisim/numeric.hpp"
#include "crisim/ranking.hpp"
#include "crisim/turtle.hpp"

namespace crisim::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    std::string embeddings;
    std::string columns;
    bool normalize_quant = false;
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    bool json = false;
    std::optional<std::size_t> dims;

    std::string csv_path;
    std::string kb_path;
    bool append = false;

    bool taxonomy = false;
    std::string crisis;
    std::string out_path;

    std::string id_a;
    std::string id_b;
    std::size_t k = 10;

    std::vector<std::string> ids;
    std::size_t sample = 0;
    std::uint64_t seed = 2024;

    std::string type;
    std::string country;
    std::string years;
};

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    return in;
}

KnowledgeBase load_kb(const std::string& path) {
    auto in = open_in(path);
    return parse_turtle(in);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content) || !out.flush()) throw Error("cannot write " + path);
}

EmbeddingTable load_table(const Options& o, std::ostream& err) {
    if (o.embeddings.empty())
        throw Error("an embedding file is required: pass --embeddings or set CRISIM_EMBEDDINGS");
    std::vector<std::string> warnings;
    auto table = load_embeddings(std::filesystem::path(o.embeddings), EmbeddingLoadOptions{o.dims}, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    return table;
}

ScoringOptions scoring(const Options& o) { return {o.normalize_quant, o.workers, nullptr}; }

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

int cmd_ingest(const Options& o, std::ostream& out, std::ostream& err) {
    auto schema = CsvSchema::emdat();
    if (!o.columns.empty()) schema = CsvSchema::from_config(ConfigFile::load(o.columns));

    auto in = open_in(o.csv_path);
    const auto taxonomy = build_taxonomy();
    auto parsed = parse_csv(in, schema, taxonomy);

    KnowledgeBase kb = o.append && std::filesystem::exists(o.kb_path) ? load_kb(o.kb_path) : KnowledgeBase(taxonomy);
    kb.assert_taxonomy();
    ingest_corpus(parsed.records, kb);
    write_file(o.kb_path, to_turtle(kb));

    const auto& report = parsed.report;
    for (const auto& w : report.warnings) err << "warning: row " << w.row << ": " << w.message << '\n';
    for (const auto& e : report.errors) err << "rejected: row " << e.row << ": " << e.message << '\n';

    if (o.json) {
        json j;
        j["accepted"] = report.accepted;
        j["rejected"] = report.rejected;
        j["warnings"] = report.warnings.size();
        j["per_type_counts"] = json::object();
        for (const auto& [type, n] : report.per_type_counts) j["per_type_counts"][type] = n;
        j["errors"] = json::array();
        for (const auto& e : report.errors) j["errors"].push_back({{"row", e.row}, {"message", e.message}});
        out << j.dump() << '\n';
    } else {
        out << "accepted: " << report.accepted << '\n'
            << "rejected: " << report.rejected << '\n'
            << "warnings: " << report.warnings.size() << '\n';
        for (const auto& [type, n] : report.per_type_counts) out << "  " << type << ": " << n << '\n';
        out << "wrote " << o.kb_path << '\n';
    }
    return report.rejected == 0 ? 0 : 2;
}

int cmd_stats(const Options& o, std::ostream& out) {
    const auto s = load_kb(o.kb_path).stats();
    const std::pair<const char*, std::size_t> rows[] = {
        {"Classes", s.classes},
        {"Individuals", s.individuals},
        {"Object Properties", s.object_properties},
        {"Data Properties", s.data_properties},
        {"Statements", s.statements},
    };
    if (o.json) {
        json j;
        j["classes"] = s.classes;
        j["individuals"] = s.individuals;
        j["object_properties"] = s.object_properties;
        j["data_properties"] = s.data_properties;
        j["statements"] = s.statements;
        out << j.dump() << '\n';
        return 0;
    }
    for (const auto& [label, n] : rows)
        out << std::left << std::setw(19) << (std::string(label) + ":") << std::right << std::setw(8) << n << '\n';
    return 0;
}

int cmd_export(const Options& o, std::ostream& out) {
    std::ostringstream buf;
    if (o.taxonomy) {
        serialize_taxonomy(build_taxonomy(), buf);
    } else {
        if (o.kb_path.empty()) throw Error("export needs a knowledge base file unless --taxonomy is given");
        const auto kb = load_kb(o.kb_path);
        if (o.crisis.empty()) serialize_turtle(kb, buf);
        else serialize_turtle(kb.crisis_subgraph(o.crisis), kb.taxonomy(), buf);
    }
    if (o.out_path.empty()) {
        out << buf.str();
    } else {
        write_file(o.out_path, buf.str());
        out << o.out_path << '\n';
    }
    return 0;
}

int cmd_sim(const Options& o, std::ostream& out, std::ostream& err) {
    const auto kb = load_kb(o.kb_path);
    const auto table = load_table(o, err);
    const SimilarityEngine engine(kb, table, scoring(o));
    const auto s = engine.score(o.id_a, o.id_b);
    if (o.json) {
        json j;
        j["a"] = o.id_a;
        j["b"] = o.id_b;
        j["combined"] = s.combined;
        j["normalized"] = s.normalized;
        j["qualitative_avg"] = s.qualitative_avg;
        j["quantitative_avg"] = s.quantitative_avg;
        j["qualitative_pairs"] = s.qualitative_pairs;
        j["quantitative_pairs"] = s.quantitative_pairs;
        out << j.dump() << '\n';
        return 0;
    }
    out << "combined: " << fixed6(s.combined) << '\n'
        << "normalized: " << fixed6(s.normalized) << '\n'
        << "qualitative_avg: " << fixed6(s.qualitative_avg) << '\n'
        << "quantitative_avg: " << fixed6(s.quantitative_avg) << '\n'
        << "qualitative_pairs: " << s.qualitative_pairs << '\n'
        << "quantitative_pairs: " << s.quantitative_pairs << '\n';
    return 0;
}

int cmd_topk(const Options& o, std::ostream& out, std::ostream& err) {
    const auto kb = load_kb(o.kb_path);
    const auto table = load_table(o, err);
    const SimilarityEngine engine(kb, table, scoring(o));
    write_topk_jsonl(o.id_a, engine.top_k(o.id_a, o.k), out);
    return 0;
}

std::vector<std::string> sample_ids(std::vector<std::string> ids, std::size_t n, std::uint64_t seed) {
    if (n >= ids.size()) return ids;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = i + static_cast<std::size_t>(rng() % (ids.size() - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(n);
    std::sort(ids.begin(), ids.end());
    return ids;
}

int cmd_matrix(const Options& o, std::ostream& out, std::ostream& err) {
    const auto kb = load_kb(o.kb_path);
    const auto table = load_table(o, err);
    auto ids = o.ids.empty() ? kb.crisis_ids() : o.ids;
    if (o.sample > 0) ids = sample_ids(std::move(ids), o.sample, o.seed);
    if (ids.empty()) throw Error("no crises to compare");

    const SimilarityEngine engine(kb, table, scoring(o));
    std::ostringstream csv;
    write_matrix_csv(engine.matrix(ids), csv);
    if (o.out_path.empty()) {
        out << csv.str();
    } else {
        write_file(o.out_path, csv.str());
        out << o.out_path << '\n';
    }
    return 0;
}

int cmd_list(const Options& o, std::ostream& out) {
    const auto kb = load_kb(o.kb_path);
    CrisisFilter filter;
    if (!o.type.empty()) {
        const auto* node = kb.taxonomy().contains(o.type) ? &kb.taxonomy().node(o.type)
                                                          : kb.taxonomy().find_by_label(o.type);
        if (!node) throw UnknownType("unknown crisis type: " + o.type);
        filter.type = node->id;
    }
    if (!o.country.empty()) filter.country = o.country;
    if (!o.years.empty()) {
        const auto colon = o.years.find(':');
        const auto from = parse_number(o.years.substr(0, colon));
        const auto to = colon == std::string::npos ? from : parse_number(o.years.substr(colon + 1));
        if (!from || !to) throw Error("--years expects FROM:TO");
        filter.years = std::pair(static_cast<int>(*from), static_cast<int>(*to));
    }
    for (const auto& id : kb.list_crises(filter)) out << id << '\n';
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Crisis knowledge base and semantic similarity ranking", "crisim"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML file with default option values");

    app.add_option("--embeddings", o.embeddings, "Word-vector text file")->envname("CRISIM_EMBEDDINGS");
    app.add_option("--dims", o.dims, "Vector dimension; skips a leading count/dimension header line");
    app.add_option("--columns", o.columns, "Column-map file overriding the EM-DAT layout");
    app.add_flag("--normalize-quant", o.normalize_quant, "Min-max scale quantitative values per predicate");
    app.add_option("--workers", o.workers, "Parallel scoring workers")->check(CLI::PositiveNumber);
    app.add_flag("--json", o.json, "Machine-readable output");

    auto* ingest = app.add_subcommand("ingest", "Parse a CSV corpus and write a Turtle knowledge base");
    ingest->add_option("csv", o.csv_path, "Input CSV")->required();
    ingest->add_option("kb", o.kb_path, "Output Turtle file")->required();
    ingest->add_flag("--append", o.append, "Upsert into an existing knowledge base file");

    auto* stats = app.add_subcommand("stats", "Print structure and instance counts");
    stats->add_option("kb", o.kb_path, "Turtle knowledge base")->required();

    auto* exp = app.add_subcommand("export", "Write canonical Turtle");
    exp->add_option("kb", o.kb_path, "Turtle knowledge base");
    exp->add_flag("--taxonomy", o.taxonomy, "Write the crisis class hierarchy only");
    exp->add_option("--crisis", o.crisis, "Write one crisis subgraph");
    exp->add_option("--out", o.out_path, "Output file (default stdout)");

    auto* sim = app.add_subcommand("sim", "Score two crises");
    sim->add_option("kb", o.kb_path, "Turtle knowledge base")->required();
    sim->add_option("a", o.id_a, "First crisis id")->required();
    sim->add_option("b", o.id_b, "Second crisis id")->required();

    auto* topk = app.add_subcommand("topk", "Rank crises against a query crisis");
    topk->add_option("kb", o.kb_path, "Turtle knowledge base")->required();
    topk->add_option("id", o.id_a, "Query crisis id")->required();
    topk->add_option("--k", o.k, "Number of results")->check(CLI::PositiveNumber);

    auto* mat = app.add_subcommand("matrix", "All-pairs similarity matrix as CSV");
    mat->add_option("kb", o.kb_path, "Turtle knowledge base")->required();
    mat->add_option("--ids", o.ids, "Crisis ids, in output order")->delimiter(',');
    mat->add_option("--sample", o.sample, "Random sample size drawn from the knowledge base");
    mat->add_option("--seed", o.seed, "Sampling seed");
    mat->add_option("--out", o.out_path, "Output file (default stdout)");

    auto* list = app.add_subcommand("list", "List crisis ids matching filters");
    list->add_option("kb", o.kb_path, "Turtle knowledge base")->required();
    list->add_option("--type", o.type, "Taxonomy node id or label");
    list->add_option("--country", o.country, "Country name");
    list->add_option("--years", o.years, "Inclusive start-year range FROM:TO");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*ingest) return cmd_ingest(o, out, err);
        if (*stats) return cmd_stats(o, out);
        if (*exp) return cmd_export(o, out);
        if (*sim) return cmd_sim(o, out, err);
        if (*topk) return cmd_topk(o, out, err);
        if (*mat) return cmd_matrix(o, out, err);
        if (*list) return cmd_list(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace crisim::cli
