#include "crisim/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace crisim {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(uniform() * static_cast<double>(hi - lo + 1));
    }
    bool chance(double p) { return uniform() < p; }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

    template <typename T>
    const T& pick(const std::vector<T>& v) { return v[index(v.size())]; }

private:
    std::mt19937_64 engine_;
};

struct Place {
    std::string region;
    std::string location;
    double lat;
    double lon;
};

const std::vector<Place>& places() {
    static const std::vector<Place> p = {
        {"Île-de-France", "Paris", 48.857, 2.352},
        {"Île-de-France", "Meaux", 48.960, 2.879},
        {"Auvergne-Rhône-Alpes", "Lyon", 45.764, 4.836},
        {"Auvergne-Rhône-Alpes", "Grenoble", 45.188, 5.724},
        {"Auvergne-Rhône-Alpes", "Chamonix", 45.924, 6.870},
        {"Provence-Alpes-Côte d'Azur", "Marseille", 43.296, 5.370},
        {"Provence-Alpes-Côte d'Azur", "Nice", 43.710, 7.262},
        {"Provence-Alpes-Côte d'Azur", "Vaison-la-Romaine", 44.241, 5.074},
        {"Occitanie", "Toulouse", 43.605, 1.444},
        {"Occitanie", "Nîmes", 43.837, 4.360},
        {"Occitanie", "Montpellier", 43.611, 3.877},
        {"Nouvelle-Aquitaine", "Bordeaux", 44.838, -0.579},
        {"Nouvelle-Aquitaine", "La Rochelle", 46.160, -1.151},
        {"Bretagne", "Brest", 48.390, -4.486},
        {"Bretagne", "Rennes", 48.117, -1.678},
        {"Normandie", "Rouen", 49.443, 1.099},
        {"Hauts-de-France", "Lille", 50.629, 3.057},
        {"Grand Est", "Strasbourg", 48.573, 7.752},
        {"Grand Est", "Metz", 49.119, 6.175},
        {"Pays de la Loire", "Nantes", 47.218, -1.554},
        {"Centre-Val de Loire", "Orléans", 47.903, 1.909},
        {"Bourgogne-Franche-Comté", "Dijon", 47.322, 5.041},
        {"Corse", "Ajaccio", 41.919, 8.739},
    };
    return p;
}

struct TypeProfile {
    std::string type;
    std::vector<std::pair<std::string, double>> subtypes;  // leaf id, weight; "" keeps the type node
    std::vector<std::string> origins;
    std::string scale;
    double mag_lo, mag_hi;
    std::vector<std::string> infrastructure;
    std::vector<std::string> regions;  // preferred regions, empty for any
    int min_days, max_days;
    double deaths_hi, affected_hi, damages_hi;
};

const std::vector<TypeProfile>& profiles() {
    static const std::vector<TypeProfile> p = {
        {"Drought", {{"", 1}}, {"Lack of rain", "Heat wave and lack of rain"}, "Km2", 5000, 90000,
         {"Crop losses", "Water supply restrictions"}, {}, 60, 240, 0, 5000, 4'000'000},
        {"Earthquake", {{"GroundMovement", 1}}, {"Fault rupture"}, "Richter", 3.8, 6.2,
         {"Houses damaged", "Churches and schools damaged"},
         {"Provence-Alpes-Côte d'Azur", "Auvergne-Rhône-Alpes", "Occitanie", "Grand Est"}, 0, 0, 50, 20000, 500'000},
        {"Epidemic", {{"ViralDisease", 1}, {"BacterialDisease", 1}}, {"Influenza", "Meningitis"}, "Vaccinated",
         1000, 50000, {}, {}, 20, 120, 200, 30000, 0},
        {"ExtremeTemperature", {{"HeatWave", 10}, {"ColdWave", 8}, {"SevereWinterConditions", 4}},
         {"Heat wave", "Cold wave", "Snow and frost"}, "°C", -20, 44, {"Power outages", "Rail network disrupted"},
         {}, 3, 25, 15000, 10000, 800'000},
        {"Flood", {{"RiverineFlood", 30}, {"FlashFlood", 20}, {"CoastalFlood", 4}, {"", 6}},
         {"Heavy rains", "Torrential rains", "Snowmelt", "Storm surge"}, "Km2", 50, 15000,
         {"Roads and bridges destroyed", "Houses flooded", "Railway lines cut"}, {}, 1, 20, 40, 60000, 2'500'000},
        {"IndustrialAccident",
         {{"Explosion", 5}, {"ChemicalSpill", 2}, {"Collapse", 2}, {"GasLeak", 2}, {"IndustrialFire", 1},
          {"OilSpill", 1}, {"Poisoning", 1}},
         {"Chemical plant", "Refinery", "Gas pipeline"}, "", 0, 0, {"Factory destroyed", "Nearby houses damaged"},
         {}, 0, 2, 40, 5000, 2'000'000},
        {"Landslide", {{"Avalanche", 6}, {"Mudslide", 4}, {"", 3}}, {"Heavy snowfall", "Heavy rains"}, "", 0, 0,
         {"Chalets destroyed", "Road blocked"}, {"Auvergne-Rhône-Alpes", "Provence-Alpes-Côte d'Azur", "Occitanie"},
         0, 1, 40, 500, 50'000},
        {"MiscellaneousAccident",
         {{"MiscellaneousFire", 10}, {"MiscellaneousCollapse", 8}, {"MiscellaneousExplosion", 6}},
         {"Building fire", "Gas explosion", "Structure collapse"}, "", 0, 0, {"Building destroyed"}, {}, 0, 1, 150,
         500, 100'000},
        {"Storm", {{"ExtraTropicalStorm", 46}, {"ConvectiveStorm", 30}},
         {"Winter storm", "Thunderstorms", "Hail storm", "Tornado"}, "Kph", 90, 200,
         {"Power lines down", "Roofs torn off", "Forests damaged"}, {}, 1, 4, 90, 3'000'000, 9'000'000},
        {"TransportAccident", {{"RoadAccident", 20}, {"AirAccident", 14}, {"RailAccident", 12}, {"WaterAccident", 8}},
         {"Bus crash", "Plane crash", "Train derailment", "Ferry capsized"}, "", 0, 0, {"Vehicle destroyed"}, {}, 0, 0,
         150, 300, 80'000},
        {"Wildfire", {{"ForestFire", 9}, {"LandFire", 4}}, {"Heat wave and drought", "Arson"}, "Km2", 5, 300,
         {"Houses burnt", "Forests burnt"}, {"Provence-Alpes-Côte d'Azur", "Corse", "Occitanie", "Nouvelle-Aquitaine"},
         2, 15, 10, 8000, 400'000},
    };
    return p;
}

std::vector<std::string> expand_leaves(const TypeProfile& profile, std::size_t count, Rng& rng) {
    double total = 0;
    for (const auto& [leaf, w] : profile.subtypes) total += w;
    std::vector<std::string> leaves;
    for (const auto& [leaf, w] : profile.subtypes) {
        const auto n = static_cast<std::size_t>(std::lround(w / total * static_cast<double>(count)));
        for (std::size_t i = 0; i < n && leaves.size() < count; ++i)
            leaves.push_back(leaf.empty() ? profile.type : leaf);
    }
    while (leaves.size() < count) leaves.push_back(profile.subtypes.front().first.empty() ? profile.type
                                                                                       : profile.subtypes.front().first);
    std::shuffle(leaves.begin(), leaves.end(), std::mt19937_64(rng.integer(0, 1'000'000)));
    return leaves;
}

PartialDate make_date(std::int64_t epoch, bool month, bool day) {
    auto d = PartialDate::from_epoch_day(epoch);
    if (!day) d.day.reset();
    if (!month) d.month.reset();
    return d;
}

std::int64_t seasonal_start(const std::string& type, int year, Rng& rng) {
    int lo = 1, hi = 12;
    if (type == "Wildfire" || type == "Drought") lo = 6, hi = 9;
    else if (type == "Landslide") lo = 1, hi = 4;
    const int month = static_cast<int>(rng.integer(lo, hi));
    const int day = static_cast<int>(rng.integer(1, 28));
    return PartialDate{year, static_cast<unsigned>(month), static_cast<unsigned>(day)}.epoch_day();
}

double round_to(double v, double step) { return std::round(v / step) * step; }

}  // namespace

const std::vector<std::pair<std::string, std::size_t>>& fixture_type_counts() {
    static const std::vector<std::pair<std::string, std::size_t>> counts = {
        {"Drought", 5},
        {"Earthquake", 4},
        {"Epidemic", 2},
        {"ExtremeTemperature", 22},
        {"Flood", 60},
        {"IndustrialAccident", 14},
        {"Landslide", 13},
        {"MiscellaneousAccident", 24},
        {"Storm", 76},
        {"TransportAccident", 54},
        {"Wildfire", 13},
    };
    return counts;
}

std::vector<CrisisRecord> generate_fixture(const Taxonomy& taxonomy, std::uint64_t seed) {
    Rng rng(seed);

    std::vector<std::pair<const TypeProfile*, std::string>> slots;
    for (const auto& [type, count] : fixture_type_counts()) {
        const auto& profile = *std::find_if(profiles().begin(), profiles().end(),
                                            [&](const auto& p) { return p.type == type; });
        for (auto& leaf : expand_leaves(profile, count, rng)) slots.emplace_back(&profile, std::move(leaf));
    }
    std::shuffle(slots.begin(), slots.end(), std::mt19937_64(rng.integer(0, 1'000'000)));

    const auto force = [&](std::size_t position, const std::string& leaf) {
        const auto it = std::find_if(slots.begin() + static_cast<std::ptrdiff_t>(position), slots.end(),
                                     [&](const auto& s) { return s.second == leaf; });
        if (it != slots.end()) std::iter_swap(slots.begin() + static_cast<std::ptrdiff_t>(position), it);
    };
    force(79, "RiverineFlood");
    force(82, "Flood");

    std::vector<CrisisRecord> records;
    records.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const auto& profile = *slots[i].first;
        const auto& leaf = slots[i].second;

        CrisisRecord r;
        r.crisis_id = std::to_string(i + 1) + "_" + leaf;
        r.type_path = taxonomy.path_to(leaf);

        const Place* place = &rng.pick(places());
        if (!profile.regions.empty()) {
            const auto& region = rng.pick(profile.regions);
            std::vector<const Place*> candidates;
            for (const auto& p : places())
                if (p.region == region) candidates.push_back(&p);
            place = candidates[rng.index(candidates.size())];
        }
        r.location = place->location;
        r.region = place->region;
        r.country = "France";
        r.continent = "Europe";
        if (rng.chance(0.7)) {
            r.latitude = round_to(place->lat + rng.uniform(-0.15, 0.15), 0.001);
            r.longitude = round_to(place->lon + rng.uniform(-0.15, 0.15), 0.001);
        }

        const int year = static_cast<int>(1903 + std::floor(119.0 * std::sqrt(rng.uniform())));
        const auto start = seasonal_start(profile.type, std::min(year, 2022), rng);
        const bool has_month = rng.chance(0.95);
        const bool has_day = has_month && rng.chance(0.9);
        r.start_date = make_date(start, has_month, has_day);
        if (rng.chance(0.85)) {
            const auto end = start + rng.integer(profile.min_days, profile.max_days);
            const bool end_full = has_day && rng.chance(0.95);
            r.end_date = make_date(end, has_month, end_full);
        }

        if (rng.chance(0.6)) r.trigger_origin = rng.pick(profile.origins);
        if (!profile.scale.empty() && rng.chance(0.6)) {
            r.magnitude_scale = profile.scale;
            const double step = profile.mag_hi < 100 ? 0.1 : 1.0;
            r.magnitude_value = round_to(rng.uniform(profile.mag_lo, profile.mag_hi), step);
        }
        if (profile.deaths_hi > 0 && rng.chance(0.8))
            r.deaths = static_cast<std::int64_t>(std::floor(rng.log_uniform(1, profile.deaths_hi + 1))) - 1;
        if (rng.chance(0.5)) r.injured = static_cast<std::int64_t>(std::floor(rng.log_uniform(1, 500)));
        if (rng.chance(0.2)) r.missing = rng.integer(0, 20);
        if (rng.chance(0.6)) r.affected = static_cast<std::int64_t>(std::floor(rng.log_uniform(10, profile.affected_hi + 10)));
        if (profile.damages_hi > 0 && rng.chance(0.45)) {
            const double total = std::round(rng.log_uniform(100, profile.damages_hi));
            r.total_damages = total;
            if (rng.chance(0.5)) r.insured_losses = std::round(total * rng.uniform(0.1, 0.8));
            if (rng.chance(0.15)) r.reconstruction_costs = std::round(total * rng.uniform(0.3, 1.2));
        }
        if (!profile.infrastructure.empty() && rng.chance(0.4)) r.infrastructure_damage = rng.pick(profile.infrastructure);

        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace crisim
