#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "crisim/fixture.hpp"
#include "crisim/ingest.hpp"

int main(int argc, char** argv) {
    std::string out_path;
    std::uint64_t seed = crisim::kFixtureSeed;
    CLI::App app{"Writes the synthetic France crisis corpus as EM-DAT style CSV", "crisim-fixture"};
    app.add_option("--out", out_path, "Output CSV (default stdout)");
    app.add_option("--seed", seed, "Generator seed");
    CLI11_PARSE(app, argc, argv);

    const auto taxonomy = crisim::build_taxonomy();
    const auto records = crisim::generate_fixture(taxonomy, seed);
    if (out_path.empty()) {
        crisim::write_csv(std::cout, records, crisim::CsvSchema::emdat(), taxonomy);
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return 1;
    }
    crisim::write_csv(out, records, crisim::CsvSchema::emdat(), taxonomy);
    std::cerr << "wrote " << records.size() << " records to " << out_path << '\n';
    return 0;
}
