#include "crisim/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_set>

#include "crisim/csv.hpp"
#include "crisim/error.hpp"
#include "crisim/numeric.hpp"

namespace crisim {

namespace {

constexpr std::pair<Field, std::string_view> kFieldNames[] = {
    {Field::CrisisId, "crisis_id"},
    {Field::Type, "type"},
    {Field::Subtype, "subtype"},
    {Field::Location, "location"},
    {Field::Region, "region"},
    {Field::Country, "country"},
    {Field::Continent, "continent"},
    {Field::Latitude, "latitude"},
    {Field::Longitude, "longitude"},
    {Field::StartYear, "start_year"},
    {Field::StartMonth, "start_month"},
    {Field::StartDay, "start_day"},
    {Field::EndYear, "end_year"},
    {Field::EndMonth, "end_month"},
    {Field::EndDay, "end_day"},
    {Field::TriggerOrigin, "trigger_origin"},
    {Field::MagnitudeScale, "magnitude_scale"},
    {Field::MagnitudeValue, "magnitude_value"},
    {Field::Affected, "affected"},
    {Field::Injured, "injured"},
    {Field::Missing, "missing"},
    {Field::Deaths, "deaths"},
    {Field::TotalDamages, "total_damages"},
    {Field::InsuredLosses, "insured_losses"},
    {Field::ReconstructionCosts, "reconstruction_costs"},
    {Field::InfrastructureDamage, "infrastructure_damage"},
};

/// Thrown inside row processing; turns into a rejection, never escapes.
struct RowReject {
    std::string message;
};

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

class RowView {
public:
    RowView(const std::vector<std::string>& fields, const std::map<Field, std::size_t>& columns,
            const CsvSchema& schema)
        : fields_(fields), columns_(columns), schema_(schema) {}

    std::optional<std::string> text(Field f) const {
        const auto it = columns_.find(f);
        if (it == columns_.end()) return std::nullopt;
        auto v = trim(fields_[it->second]);
        if (v.empty()) return std::nullopt;
        return v;
    }

    std::optional<double> real(Field f) const {
        const auto raw = text(f);
        if (!raw) return std::nullopt;
        const auto v = parse_number(*raw);
        if (!v) throw RowReject{"non-numeric value '" + *raw + "' in column " + column(f)};
        return v;
    }

    std::optional<std::int64_t> integer(Field f) const {
        const auto v = real(f);
        if (!v) return std::nullopt;
        if (*v != std::floor(*v) || std::fabs(*v) > 9.0e15)
            throw RowReject{"expected a whole number in column " + column(f)};
        return static_cast<std::int64_t>(*v);
    }

private:
    std::string column(Field f) const { return "'" + schema_.column_for(f).value_or("?") + "'"; }

    const std::vector<std::string>& fields_;
    const std::map<Field, std::size_t>& columns_;
    const CsvSchema& schema_;
};

std::optional<PartialDate> read_date(const RowView& row, Field y, Field m, Field d, const char* what) {
    const auto year = row.integer(y);
    const auto month = row.integer(m);
    const auto day = row.integer(d);
    if (!year) {
        if (month || day) throw RowReject{std::string(what) + " has month or day but no year"};
        return std::nullopt;
    }
    if (day && !month) throw RowReject{std::string(what) + " has a day but no month"};
    const auto in_range = [](std::int64_t v, std::int64_t lo, std::int64_t hi) { return v >= lo && v <= hi; };
    if (!in_range(*year, 1, 9999) || (month && !in_range(*month, 1, 12)) || (day && !in_range(*day, 1, 31)))
        throw RowReject{std::string(what) + " is out of range"};
    PartialDate date{static_cast<int>(*year), std::nullopt, std::nullopt};
    if (month) date.month = static_cast<unsigned>(*month);
    if (day) date.day = static_cast<unsigned>(*day);
    return date;
}

std::string granularity_warning(const PartialDate& d, const char* what) {
    if (!d.month) return std::string(what) + " has year granularity; encoded as July 1";
    if (!d.day) return std::string(what) + " has month granularity; encoded as the 15th";
    return {};
}

}  // namespace

std::string_view field_name(Field f) {
    for (const auto& [field, name] : kFieldNames)
        if (field == f) return name;
    return "?";
}

std::optional<Field> field_from_name(std::string_view name) {
    for (const auto& [field, n] : kFieldNames)
        if (n == name) return field;
    return std::nullopt;
}

const std::vector<Field>& all_fields() {
    static const std::vector<Field> fields = [] {
        std::vector<Field> out;
        for (const auto& [field, name] : kFieldNames) out.push_back(field);
        return out;
    }();
    return fields;
}

CsvSchema CsvSchema::emdat() {
    CsvSchema s;
    s.column_map = {
        {"Dis No", Field::CrisisId},
        {"Disaster Type", Field::Type},
        {"Disaster Subtype", Field::Subtype},
        {"Country", Field::Country},
        {"Region", Field::Region},
        {"Continent", Field::Continent},
        {"Location", Field::Location},
        {"Origin", Field::TriggerOrigin},
        {"Dis Mag Value", Field::MagnitudeValue},
        {"Dis Mag Scale", Field::MagnitudeScale},
        {"Latitude", Field::Latitude},
        {"Longitude", Field::Longitude},
        {"Start Year", Field::StartYear},
        {"Start Month", Field::StartMonth},
        {"Start Day", Field::StartDay},
        {"End Year", Field::EndYear},
        {"End Month", Field::EndMonth},
        {"End Day", Field::EndDay},
        {"Total Deaths", Field::Deaths},
        {"No Injured", Field::Injured},
        {"No Missing", Field::Missing},
        {"No Affected", Field::Affected},
        {"Reconstruction Costs ('000 US$)", Field::ReconstructionCosts},
        {"Insured Damages ('000 US$)", Field::InsuredLosses},
        {"Total Damages ('000 US$)", Field::TotalDamages},
        {"Infrastructure Damage", Field::InfrastructureDamage},
    };
    s.required = {"Dis No", "Disaster Type", "Start Year"};
    return s;
}

CsvSchema CsvSchema::from_config(const ConfigFile& config, CsvSchema base) {
    if (const auto* columns = config.section("columns")) {
        for (const auto& [key, value] : *columns) {
            const auto field = field_from_name(key);
            if (!field) throw Error("unknown record field in column map: " + key);
            const auto* name = std::get_if<std::string>(&value);
            if (!name || name->empty()) throw Error("column for '" + key + "' must be a non-empty string");

            const auto old = base.column_for(*field);
            std::erase_if(base.column_map, [&](const auto& e) { return e.second == *field; });
            base.column_map.emplace_back(*name, *field);
            if (old && base.required.erase(*old)) base.required.insert(*name);
        }
    }
    if (const auto* req = config.get("required", "columns")) {
        const auto* list = std::get_if<std::vector<std::string>>(req);
        if (!list) throw Error("[required] columns must be an array of strings");
        base.required = {list->begin(), list->end()};
    }
    for (const Field f : {Field::CrisisId, Field::Type})
        if (const auto c = base.column_for(f)) base.required.insert(*c);
    base.check();
    return base;
}

std::optional<std::string> CsvSchema::column_for(Field f) const {
    for (const auto& [column, field] : column_map)
        if (field == f) return column;
    return std::nullopt;
}

void CsvSchema::check() const {
    std::set<std::string> columns;
    std::set<Field> fields;
    for (const auto& [column, field] : column_map) {
        if (!columns.insert(column).second) throw Error("column mapped twice: " + column);
        if (!fields.insert(field).second)
            throw Error("field mapped twice: " + std::string(field_name(field)));
    }
    for (const auto& r : required)
        if (!columns.contains(r)) throw Error("required column is not mapped: " + r);
    for (const Field f : {Field::CrisisId, Field::Type}) {
        const auto c = column_for(f);
        if (!c || !required.contains(*c))
            throw Error("the " + std::string(field_name(f)) + " column must be mapped and required");
    }
}

ParsedCsv parse_csv(std::istream& in, const CsvSchema& schema, const Taxonomy& taxonomy) {
    schema.check();
    const auto rows = csv::read(in);
    if (rows.empty()) throw MalformedCsv(1, "missing header row");

    const auto& header = rows.front().fields;
    std::map<std::string, std::size_t> header_index;
    for (std::size_t i = 0; i < header.size(); ++i) header_index.emplace(trim(header[i]), i);
    for (const auto& r : schema.required)
        if (!header_index.contains(r)) throw MissingRequiredColumn(r);

    std::map<Field, std::size_t> columns;
    for (const auto& [column, field] : schema.column_map)
        if (const auto it = header_index.find(column); it != header_index.end()) columns[field] = it->second;

    ParsedCsv out;
    auto& report = out.report;
    std::unordered_set<std::string> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != header.size())
            throw MalformedCsv(row.number, "expected " + std::to_string(header.size()) + " columns, found " +
                                               std::to_string(row.fields.size()));
        const RowView view(row.fields, columns, schema);
        std::vector<RowMessage> warnings;
        try {
            CrisisRecord rec;
            rec.crisis_id = view.text(Field::CrisisId).value_or("");
            if (rec.crisis_id.empty()) throw RowReject{"missing crisis id"};
            if (seen.contains(rec.crisis_id)) throw RowReject{"duplicate crisis id " + rec.crisis_id};

            const auto type = view.text(Field::Type);
            if (!type) throw RowReject{"missing crisis type"};
            const auto subtype = view.text(Field::Subtype);
            Classification cls;
            try {
                cls = taxonomy.classify(*type, subtype ? std::optional<std::string_view>(*subtype) : std::nullopt);
            } catch (const UnknownType& e) {
                throw RowReject{e.what()};
            }
            if (cls.warning) warnings.push_back({row.number, *cls.warning});
            rec.type_path = std::move(cls.path);

            rec.location = view.text(Field::Location);
            rec.region = view.text(Field::Region);
            rec.country = view.text(Field::Country);
            rec.continent = view.text(Field::Continent);
            rec.latitude = view.real(Field::Latitude);
            rec.longitude = view.real(Field::Longitude);

            const auto start = read_date(view, Field::StartYear, Field::StartMonth, Field::StartDay, "start date");
            if (!start) throw RowReject{"missing start year"};
            rec.start_date = *start;
            rec.end_date = read_date(view, Field::EndYear, Field::EndMonth, Field::EndDay, "end date");
            if (auto w = granularity_warning(rec.start_date, "start date"); !w.empty())
                warnings.push_back({row.number, w});
            if (rec.end_date)
                if (auto w = granularity_warning(*rec.end_date, "end date"); !w.empty())
                    warnings.push_back({row.number, w});

            rec.trigger_origin = view.text(Field::TriggerOrigin);
            rec.magnitude_scale = view.text(Field::MagnitudeScale);
            rec.magnitude_value = view.real(Field::MagnitudeValue);
            rec.affected = view.integer(Field::Affected);
            rec.injured = view.integer(Field::Injured);
            rec.missing = view.integer(Field::Missing);
            rec.deaths = view.integer(Field::Deaths);
            rec.total_damages = view.real(Field::TotalDamages);
            rec.insured_losses = view.real(Field::InsuredLosses);
            rec.reconstruction_costs = view.real(Field::ReconstructionCosts);
            rec.infrastructure_damage = view.text(Field::InfrastructureDamage);

            if (const auto violations = validate(rec, taxonomy); !violations.empty()) {
                std::string msg = "invalid record:";
                for (const auto& v : violations) msg += " " + v.field + " " + v.rule + ";";
                msg.pop_back();
                throw RowReject{msg};
            }

            seen.insert(rec.crisis_id);
            ++report.per_type_counts[taxonomy.type_node(rec.type_path).id];
            ++report.accepted;
            report.warnings.insert(report.warnings.end(), warnings.begin(), warnings.end());
            out.records.push_back(std::move(rec));
        } catch (const RowReject& reject) {
            ++report.rejected;
            report.errors.push_back({row.number, reject.message});
        }
    }
    return out;
}

void write_csv(std::ostream& out, const std::vector<CrisisRecord>& records, const CsvSchema& schema,
               const Taxonomy& taxonomy) {
    schema.check();
    std::vector<std::string> row;
    for (const auto& [column, field] : schema.column_map) row.push_back(column);
    csv::write_row(out, row);

    const auto opt = [](const auto& v) -> std::string {
        if (!v) return {};
        using T = std::decay_t<decltype(*v)>;
        if constexpr (std::is_same_v<T, std::string>) return *v;
        else if constexpr (std::is_same_v<T, double>) return format_number(*v);
        else return std::to_string(*v);
    };
    const auto num = [](auto v) { return std::to_string(v); };

    for (const auto& r : records) {
        const auto& type = taxonomy.type_node(r.type_path);
        std::string subtype;
        const auto pos = std::find(r.type_path.begin(), r.type_path.end(), type.id);
        if (pos != r.type_path.end() && pos + 1 != r.type_path.end()) {
            if (pos + 2 != r.type_path.end())
                throw InvalidRecord(r.crisis_id + ": type path is deeper than type/subtype");
            subtype = taxonomy.node(*(pos + 1)).label;
        }

        row.clear();
        for (const auto& [column, field] : schema.column_map) {
            std::string cell;
            switch (field) {
                case Field::CrisisId: cell = r.crisis_id; break;
                case Field::Type: cell = type.label; break;
                case Field::Subtype: cell = subtype; break;
                case Field::Location: cell = opt(r.location); break;
                case Field::Region: cell = opt(r.region); break;
                case Field::Country: cell = opt(r.country); break;
                case Field::Continent: cell = opt(r.continent); break;
                case Field::Latitude: cell = opt(r.latitude); break;
                case Field::Longitude: cell = opt(r.longitude); break;
                case Field::StartYear: cell = num(r.start_date.year); break;
                case Field::StartMonth: cell = opt(r.start_date.month); break;
                case Field::StartDay: cell = opt(r.start_date.day); break;
                case Field::EndYear: cell = r.end_date ? num(r.end_date->year) : ""; break;
                case Field::EndMonth: cell = r.end_date ? opt(r.end_date->month) : ""; break;
                case Field::EndDay: cell = r.end_date ? opt(r.end_date->day) : ""; break;
                case Field::TriggerOrigin: cell = opt(r.trigger_origin); break;
                case Field::MagnitudeScale: cell = opt(r.magnitude_scale); break;
                case Field::MagnitudeValue: cell = opt(r.magnitude_value); break;
                case Field::Affected: cell = opt(r.affected); break;
                case Field::Injured: cell = opt(r.injured); break;
                case Field::Missing: cell = opt(r.missing); break;
                case Field::Deaths: cell = opt(r.deaths); break;
                case Field::TotalDamages: cell = opt(r.total_damages); break;
                case Field::InsuredLosses: cell = opt(r.insured_losses); break;
                case Field::ReconstructionCosts: cell = opt(r.reconstruction_costs); break;
                case Field::InfrastructureDamage: cell = opt(r.infrastructure_damage); break;
            }
            row.push_back(std::move(cell));
        }
        csv::write_row(out, row);
    }
}

TripleSet record_to_triples(const CrisisRecord& r, const Taxonomy& taxonomy) {
    if (const auto violations = validate(r, taxonomy); !violations.empty())
        throw InvalidRecord(r.crisis_id + ": " + violations.front().field + " " + violations.front().rule);

    TripleSet set{r.crisis_id, {}};
    const auto subject = crisis_iri(r.crisis_id);
    const auto text = [&](const std::string& predicate, const std::optional<std::string>& v) {
        if (v) set.triples.push_back({subject, predicate, Qualitative{*v}});
    };
    const auto number = [&](const std::string& predicate, const auto& v) {
        if (v) set.triples.push_back({subject, predicate, Quantitative{{static_cast<double>(*v)}}});
    };

    set.triples.push_back({subject, vocab::kType, Qualitative{taxonomy.node(r.type_path.back()).label}});
    text(vocab::kLocation, r.location);
    text(vocab::kRegion, r.region);
    text(vocab::kCountry, r.country);
    text(vocab::kContinent, r.continent);
    if (r.latitude && r.longitude)
        set.triples.push_back({subject, vocab::kCoordinates, Quantitative{{*r.latitude, *r.longitude}}});
    number(vocab::kStartDate, std::optional<std::int64_t>(r.start_date.epoch_day()));
    if (r.end_date) number(vocab::kEndDate, std::optional<std::int64_t>(r.end_date->epoch_day()));
    number(vocab::kDuration, r.duration_days());
    text(vocab::kTriggerOrigin, r.trigger_origin);
    text(vocab::kMagnitudeScale, r.magnitude_scale);
    number(vocab::kMagnitudeValue, r.magnitude_value);
    number(vocab::kAffected, r.affected);
    number(vocab::kInjured, r.injured);
    number(vocab::kMissing, r.missing);
    number(vocab::kDeaths, r.deaths);
    number(vocab::kTotalDamages, r.total_damages);
    number(vocab::kInsuredLosses, r.insured_losses);
    number(vocab::kReconstructionCosts, r.reconstruction_costs);
    text(vocab::kInfrastructureDamage, r.infrastructure_damage);

    std::sort(set.triples.begin(), set.triples.end(), canonical_less);
    return set;
}

IngestReport ingest_corpus(const std::vector<CrisisRecord>& records, KnowledgeBase& kb) {
    IngestReport report;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        TripleSet set;
        try {
            set = record_to_triples(r, kb.taxonomy());
        } catch (const InvalidRecord& e) {
            ++report.rejected;
            report.errors.push_back({i + 1, e.what()});
            continue;
        }
        kb.remove_subject(crisis_iri(r.crisis_id));
        kb.insert(set);
        ++report.accepted;
        ++report.per_type_counts[kb.taxonomy().type_node(r.type_path).id];
    }
    return report;
}

}  // namespace crisim
