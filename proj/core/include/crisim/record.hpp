#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crisim/taxonomy.hpp"

namespace crisim {

/// Calendar date where month and day may be unknown (EM-DAT often records
/// only the year). A day without a month is not representable.
struct PartialDate {
    int year = 1900;
    std::optional<unsigned> month;
    std::optional<unsigned> day;

    bool is_full() const noexcept { return month.has_value() && day.has_value(); }
    bool is_valid() const noexcept;

    /// Days since 1900-01-01. Unknown month encodes as July 1, unknown day as the 15th.
    std::int64_t epoch_day() const;
    static PartialDate from_epoch_day(std::int64_t days);

    auto operator<=>(const PartialDate&) const = default;
};

struct CrisisRecord {
    std::string crisis_id;
    std::vector<std::string> type_path;  // root -> leaf

    std::optional<std::string> location;
    std::optional<std::string> region;
    std::optional<std::string> country;
    std::optional<std::string> continent;
    std::optional<double> latitude;
    std::optional<double> longitude;

    PartialDate start_date;
    std::optional<PartialDate> end_date;

    std::optional<std::string> trigger_origin;
    std::optional<std::string> magnitude_scale;
    std::optional<double> magnitude_value;

    std::optional<std::int64_t> affected;
    std::optional<std::int64_t> injured;
    std::optional<std::int64_t> missing;
    std::optional<std::int64_t> deaths;
    std::optional<double> total_damages;  // thousand currency units
    std::optional<double> insured_losses;
    std::optional<double> reconstruction_costs;
    std::optional<std::string> infrastructure_damage;

    /// Calendar difference in days; present only when both dates are full.
    std::optional<std::int64_t> duration_days() const;

    bool operator==(const CrisisRecord&) const = default;
};

struct Violation {
    std::string field;
    std::string rule;

    bool operator==(const Violation&) const = default;
};

/// Checks every record invariant. An empty result guarantees the record can be
/// converted to triples.
std::vector<Violation> validate(const CrisisRecord& record, const Taxonomy& taxonomy);

/// Characters allowed in crisis ids, which become IRI local names.
bool is_valid_crisis_id(std::string_view id);

}  // namespace crisim
