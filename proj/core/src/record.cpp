#include "crisim/record.hpp"

#include <chrono>
#include <cmath>

namespace crisim {

namespace {

constexpr std::chrono::sys_days kEpoch{std::chrono::year{1900} / 1 / 1};

void check_text(std::vector<Violation>& out, const char* field,
                const std::optional<std::string>& value) {
    if (value && value->empty()) out.push_back({field, "must be non-empty when present"});
}

template <typename T>
void check_non_negative(std::vector<Violation>& out, const char* field,
                        const std::optional<T>& value) {
    if (!value) return;
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(*value)) {
            out.push_back({field, "must be finite"});
            return;
        }
    }
    if (*value < 0) out.push_back({field, "must be >= 0"});
}

}  // namespace

bool PartialDate::is_valid() const noexcept {
    using namespace std::chrono;
    if (year < 1 || year > 9999) return false;
    if (day && !month) return false;
    if (month && (*month < 1 || *month > 12)) return false;
    if (day) return year_month_day{std::chrono::year{year}, std::chrono::month{*month}, std::chrono::day{*day}}.ok();
    return true;
}

std::int64_t PartialDate::epoch_day() const {
    using namespace std::chrono;
    const unsigned m = month.value_or(7);
    const unsigned d = month ? day.value_or(15) : 1;
    const sys_days date{std::chrono::year{year} / std::chrono::month{m} / std::chrono::day{d}};
    return (date - kEpoch).count();
}

PartialDate PartialDate::from_epoch_day(std::int64_t days) {
    using namespace std::chrono;
    const year_month_day ymd{kEpoch + std::chrono::days{days}};
    return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
            static_cast<unsigned>(ymd.day())};
}

std::optional<std::int64_t> CrisisRecord::duration_days() const {
    if (!start_date.is_full() || !end_date || !end_date->is_full()) return std::nullopt;
    if (!start_date.is_valid() || !end_date->is_valid()) return std::nullopt;
    return end_date->epoch_day() - start_date.epoch_day();
}

bool is_valid_crisis_id(std::string_view id) {
    if (id.empty()) return false;
    for (const char c : id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                        c == '_' || c == '-' || c == '.';
        if (!ok) return false;
    }
    return id.back() != '.';
}

std::vector<Violation> validate(const CrisisRecord& r, const Taxonomy& taxonomy) {
    std::vector<Violation> out;
    if (!is_valid_crisis_id(r.crisis_id))
        out.push_back({"crisis_id", "must be non-empty and use only [A-Za-z0-9_.-]"});
    if (!taxonomy.is_valid_path(r.type_path))
        out.push_back({"type_path", "must be a root-to-node path in the taxonomy"});

    check_text(out, "location", r.location);
    check_text(out, "region", r.region);
    check_text(out, "country", r.country);
    check_text(out, "continent", r.continent);
    check_text(out, "trigger_origin", r.trigger_origin);
    check_text(out, "magnitude_scale", r.magnitude_scale);
    check_text(out, "infrastructure_damage", r.infrastructure_damage);

    if (r.latitude && !(std::isfinite(*r.latitude) && *r.latitude >= -90 && *r.latitude <= 90))
        out.push_back({"latitude", "must lie in [-90, 90]"});
    if (r.longitude && !(std::isfinite(*r.longitude) && *r.longitude >= -180 && *r.longitude <= 180))
        out.push_back({"longitude", "must lie in [-180, 180]"});
    if (r.latitude.has_value() != r.longitude.has_value())
        out.push_back({"latitude", "latitude and longitude must be given together"});

    const bool start_ok = r.start_date.is_valid();
    if (!start_ok) out.push_back({"start_date", "must be a valid calendar date"});
    const bool end_ok = !r.end_date || r.end_date->is_valid();
    if (!end_ok) out.push_back({"end_date", "must be a valid calendar date"});
    if (start_ok && end_ok && r.end_date && r.start_date.is_full() && r.end_date->is_full() &&
        r.end_date->epoch_day() < r.start_date.epoch_day())
        out.push_back({"end_date", "date order: end_date must not precede start_date"});

    if (r.magnitude_value && !std::isfinite(*r.magnitude_value))
        out.push_back({"magnitude_value", "must be finite"});

    check_non_negative(out, "affected", r.affected);
    check_non_negative(out, "injured", r.injured);
    check_non_negative(out, "missing", r.missing);
    check_non_negative(out, "deaths", r.deaths);
    check_non_negative(out, "total_damages", r.total_damages);
    check_non_negative(out, "insured_losses", r.insured_losses);
    check_non_negative(out, "reconstruction_costs", r.reconstruction_costs);
    return out;
}

}  // namespace crisim
