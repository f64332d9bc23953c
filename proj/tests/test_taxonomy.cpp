#include <gtest/gtest.h>

#include <set>

#include "crisim/error.hpp"
#include "crisim/record.hpp"
#include "crisim/taxonomy.hpp"

using namespace crisim;

namespace {

const Taxonomy& tax() {
    static const Taxonomy t = build_taxonomy();
    return t;
}

std::set<std::string> child_ids(std::string_view id) {
    std::set<std::string> out;
    for (const auto* n : tax().children(id)) out.insert(n->id);
    return out;
}

CrisisRecord valid_record() {
    CrisisRecord r;
    r.crisis_id = "1_RiverineFlood";
    r.type_path = tax().path_to("RiverineFlood");
    r.country = "France";
    r.latitude = 48.85;
    r.longitude = 2.35;
    r.start_date = {2016, 5, 30};
    r.end_date = PartialDate{2016, 6, 4};
    r.deaths = 4;
    return r;
}

}  // namespace

TEST(Taxonomy, NaturalHasSixChildren) {
    EXPECT_EQ(child_ids("Natural"), (std::set<std::string>{"Extraterrestrial", "Climatological", "Biological",
                                                           "Geographical", "Hydrological", "Meteorological"}));
}

TEST(Taxonomy, ManMadeHasThreeChildren) {
    EXPECT_EQ(child_ids("ManMade"),
              (std::set<std::string>{"IndustrialAccident", "MiscellaneousAccident", "TransportAccident"}));
}

TEST(Taxonomy, RootLevels) {
    EXPECT_EQ(tax().depth("Crisis"), 0u);
    EXPECT_EQ(tax().root().id, "Crisis");
    EXPECT_EQ(child_ids("Crisis"), (std::set<std::string>{"Natural", "ManMade"}));
}

TEST(Taxonomy, IsRootedTreeWithConsistentDepth) {
    std::size_t roots = 0;
    for (const auto& n : tax().nodes()) {
        if (!n.parent) {
            ++roots;
            EXPECT_EQ(n.depth, 0u);
            continue;
        }
        ASSERT_TRUE(tax().contains(*n.parent)) << n.id;
        EXPECT_EQ(n.depth, tax().node(*n.parent).depth + 1) << n.id;
        const auto path = tax().path_to(n.id);
        EXPECT_EQ(path.front(), "Crisis");
        EXPECT_EQ(path.back(), n.id);
        EXPECT_EQ(path.size(), n.depth + 1);
        EXPECT_TRUE(tax().is_valid_path(path));
    }
    EXPECT_EQ(roots, 1u);
}

TEST(Taxonomy, ContainsLeavesNamedInLiterature) {
    for (const auto& [id, parent] : std::vector<std::pair<std::string, std::string>>{
             {"ExtremeTemperature", "Meteorological"}, {"Fog", "Meteorological"}, {"Storm", "Meteorological"},
             {"Earthquake", "Geographical"}, {"MassMovement", "Geographical"},
             {"VolcanicActivity", "Geographical"}, {"Explosion", "IndustrialAccident"},
             {"GasLeak", "IndustrialAccident"}, {"Collapse", "IndustrialAccident"},
             {"OilSpill", "IndustrialAccident"}, {"Flood", "Hydrological"}, {"RiverineFlood", "Flood"}}) {
        ASSERT_TRUE(tax().contains(id)) << id;
        EXPECT_EQ(tax().node(id).parent, parent) << id;
    }
}

TEST(Taxonomy, ClassifyRiverineFlood) {
    const auto c = tax().classify("Flood", "Riverine flood");
    EXPECT_EQ(c.path, (std::vector<std::string>{"Crisis", "Natural", "Hydrological", "Flood", "RiverineFlood"}));
    EXPECT_FALSE(c.warning);
}

TEST(Taxonomy, ClassifyTypeOnly) {
    EXPECT_EQ(tax().classify("Storm").path, (std::vector<std::string>{"Crisis", "Natural", "Meteorological", "Storm"}));
}

TEST(Taxonomy, ClassifyUnknownTypeThrows) { EXPECT_THROW(tax().classify("Plague of frogs"), UnknownType); }

TEST(Taxonomy, ClassifyIgnoresCaseAndPunctuation) {
    EXPECT_EQ(tax().classify("EXTREME-temperature", "heat_wave").path.back(), "HeatWave");
    EXPECT_EQ(tax().classify("Transport accident", "Air").path.back(), "AirAccident");
    EXPECT_EQ(tax().classify("Miscellaneous accident", "Explosion").path.back(), "MiscellaneousExplosion");
    EXPECT_EQ(tax().classify("Industrial accident", "Explosion").path.back(), "Explosion");
}

TEST(Taxonomy, UnknownSubtypeTruncatesWithWarning) {
    const auto c = tax().classify("Flood", "Chocolate flood");
    EXPECT_EQ(c.path.back(), "Flood");
    ASSERT_TRUE(c.warning);
}

TEST(Taxonomy, SubtypeFromAnotherBranchIsNotAccepted) {
    const auto c = tax().classify("Storm", "Riverine flood");
    EXPECT_EQ(c.path.back(), "Storm");
    EXPECT_TRUE(c.warning);
}

TEST(Taxonomy, ClassifyIsIdempotentOnLabels) {
    for (const auto& n : tax().nodes()) {
        const auto path = tax().classify(n.label).path;
        EXPECT_EQ(path.back(), n.id) << n.label;
        if (n.parent && n.rank == Rank::Subtype) {
            EXPECT_EQ(tax().classify(tax().node(*n.parent).label, n.label).path.back(), n.id);
        }
    }
}

TEST(Taxonomy, TypeNodeOfPaths) {
    EXPECT_EQ(tax().type_node(tax().path_to("RiverineFlood")).id, "Flood");
    EXPECT_EQ(tax().type_node(tax().path_to("Flood")).id, "Flood");
    EXPECT_EQ(tax().type_node(tax().path_to("AirAccident")).id, "TransportAccident");
    EXPECT_EQ(tax().type_node(tax().path_to("Hydrological")).id, "Hydrological");
}

TEST(Taxonomy, RejectsDuplicatesAndSecondRoot) {
    Taxonomy t;
    t.add("A", "A", "", Rank::Root);
    EXPECT_THROW(t.add("B", "B", "", Rank::Group), Error);
    EXPECT_THROW(t.add("A", "Other", "A", Rank::Group), Error);
    EXPECT_THROW(t.add("C", "C", "Missing", Rank::Group), Error);
}

TEST(PartialDate, EpochDays) {
    EXPECT_EQ((PartialDate{1900, 1, 1}).epoch_day(), 0);
    EXPECT_EQ((PartialDate{1900, 3, 1}).epoch_day(), 59);  // 1900 is not a leap year
    EXPECT_EQ((PartialDate{2000, 3, 1}).epoch_day() - (PartialDate{2000, 2, 28}).epoch_day(), 2);
    EXPECT_EQ((PartialDate{1950, std::nullopt, std::nullopt}).epoch_day(), (PartialDate{1950, 7, 1}).epoch_day());
    EXPECT_EQ((PartialDate{1950, 4, std::nullopt}).epoch_day(), (PartialDate{1950, 4, 15}).epoch_day());
}

TEST(PartialDate, EpochRoundTrip) {
    for (std::int64_t d = -800; d < 50000; d += 37) EXPECT_EQ(PartialDate::from_epoch_day(d).epoch_day(), d);
}

TEST(PartialDate, Validity) {
    EXPECT_TRUE((PartialDate{2020, 2, 29}).is_valid());
    EXPECT_FALSE((PartialDate{2019, 2, 29}).is_valid());
    EXPECT_FALSE((PartialDate{2019, 13, 1}).is_valid());
    EXPECT_FALSE((PartialDate{2019, std::nullopt, 3}).is_valid());
}

TEST(Validate, ValidRecordHasNoViolations) { EXPECT_TRUE(validate(valid_record(), tax()).empty()); }

TEST(Validate, NegativeDeaths) {
    auto r = valid_record();
    r.deaths = -1;
    const auto v = validate(r, tax());
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].field, "deaths");
    EXPECT_EQ(v[0].rule, "must be >= 0");
}

TEST(Validate, DateOrder) {
    auto r = valid_record();
    r.end_date = PartialDate{2016, 5, 1};
    const auto v = validate(r, tax());
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].field, "end_date");
    EXPECT_NE(v[0].rule.find("date order"), std::string::npos);
}

TEST(Validate, PartialDatesAreNotOrdered) {
    auto r = valid_record();
    r.end_date = PartialDate{2016, std::nullopt, std::nullopt};
    EXPECT_TRUE(validate(r, tax()).empty());
    EXPECT_FALSE(r.duration_days());
}

TEST(Validate, DurationIsCalendarDifference) {
    EXPECT_EQ(valid_record().duration_days(), 5);
    auto r = valid_record();
    r.end_date.reset();
    EXPECT_FALSE(r.duration_days());
}

TEST(Validate, OtherRules) {
    auto r = valid_record();
    r.type_path = {"Crisis", "Flood"};
    r.latitude = 95;
    r.crisis_id = "bad id";
    r.total_damages = -3;
    r.location = "";
    std::set<std::string> fields;
    for (const auto& v : validate(r, tax())) fields.insert(v.field);
    EXPECT_EQ(fields, (std::set<std::string>{"type_path", "latitude", "crisis_id", "total_damages", "location"}));
}

TEST(Validate, CoordinatesTogether) {
    auto r = valid_record();
    r.longitude.reset();
    EXPECT_EQ(validate(r, tax()).size(), 1u);
}

TEST(Validate, CrisisIdCharacters) {
    EXPECT_TRUE(is_valid_crisis_id("80_RiverineFlood"));
    EXPECT_TRUE(is_valid_crisis_id("2019-0456-FRA"));
    EXPECT_FALSE(is_valid_crisis_id(""));
    EXPECT_FALSE(is_valid_crisis_id("a b"));
    EXPECT_FALSE(is_valid_crisis_id("a/b"));
    EXPECT_FALSE(is_valid_crisis_id("end."));
}
