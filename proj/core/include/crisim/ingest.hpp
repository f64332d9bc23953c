#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crisim/config.hpp"
#include "crisim/knowledge_base.hpp"
#include "crisim/record.hpp"

namespace crisim {

/// Record fields a source column can feed.
enum class Field {
    CrisisId, Type, Subtype,
    Location, Region, Country, Continent, Latitude, Longitude,
    StartYear, StartMonth, StartDay, EndYear, EndMonth, EndDay,
    TriggerOrigin, MagnitudeScale, MagnitudeValue,
    Affected, Injured, Missing, Deaths,
    TotalDamages, InsuredLosses, ReconstructionCosts, InfrastructureDamage,
};

std::string_view field_name(Field f);
std::optional<Field> field_from_name(std::string_view name);
const std::vector<Field>& all_fields();

struct CsvSchema {
    std::vector<std::pair<std::string, Field>> column_map;  // source column -> field, in write order
    std::set<std::string> required;

    /// EM-DAT public export layout.
    static CsvSchema emdat();

    /// Applies a column-map file over `base`: `[columns]` maps field names to
    /// source columns and `[required] columns = [...]` replaces the required set.
    static CsvSchema from_config(const ConfigFile& config, CsvSchema base = emdat());

    std::optional<std::string> column_for(Field f) const;

    /// Throws Error unless required columns are mapped and the id and type
    /// columns are required.
    void check() const;
};

struct RowMessage {
    std::size_t row;
    std::string message;
    bool operator==(const RowMessage&) const = default;
};

struct IngestReport {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::vector<RowMessage> warnings;
    std::vector<RowMessage> errors;  // one per rejected row
    std::map<std::string, std::size_t> per_type_counts;  // type-level taxonomy node id -> count
};

struct ParsedCsv {
    std::vector<CrisisRecord> records;
    IngestReport report;
};

/// Maps every data row to a record or a rejection diagnostic. Blank cells
/// stay absent. Throws MissingRequiredColumn before reading rows and
/// MalformedCsv for structural errors.
ParsedCsv parse_csv(std::istream& in, const CsvSchema& schema, const Taxonomy& taxonomy);

/// Inverse of parse_csv for valid records.
void write_csv(std::ostream& out, const std::vector<CrisisRecord>& records, const CsvSchema& schema,
               const Taxonomy& taxonomy);

/// Deterministic triples for one record in canonical order. Throws InvalidRecord.
TripleSet record_to_triples(const CrisisRecord& record, const Taxonomy& taxonomy);

/// Upserts every valid record: an existing crisis with the same id is replaced.
IngestReport ingest_corpus(const std::vector<CrisisRecord>& records, KnowledgeBase& kb);

}  // namespace crisim
