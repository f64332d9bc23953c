#include "crisim/taxonomy.hpp"

#include <tuple>

#include "crisim/error.hpp"
#include "utf8.hpp"

namespace crisim {

std::string fold_label(std::string_view text) {
    std::string out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char32_t cp = utf8::next(text, pos);
        if (utf8::is_letter(cp) || utf8::is_digit(cp)) utf8::append(out, utf8::to_lower(cp));
    }
    return out;
}

void Taxonomy::add(std::string id, std::string label, std::string_view parent, Rank rank,
                   std::vector<std::string> aliases) {
    if (id.empty()) throw Error("taxonomy node id must be non-empty");
    if (index_.contains(id)) throw Error("duplicate taxonomy node: " + id);
    const auto folded = fold_label(label);
    if (by_label_.contains(folded)) throw Error("duplicate taxonomy label: " + label);

    TaxonomyNode node{std::move(id), std::move(label), std::nullopt, 0, rank, std::move(aliases)};
    if (parent.empty()) {
        if (!nodes_.empty()) throw Error("taxonomy already has a root");
    } else {
        const auto& p = this->node(parent);
        node.parent = p.id;
        node.depth = p.depth + 1;
    }
    index_.emplace(node.id, nodes_.size());
    by_label_.emplace(folded, nodes_.size());
    nodes_.push_back(std::move(node));
}

const TaxonomyNode& Taxonomy::root() const {
    if (nodes_.empty()) throw Error("empty taxonomy");
    return nodes_.front();
}

bool Taxonomy::contains(std::string_view id) const { return index_.contains(std::string(id)); }

const TaxonomyNode& Taxonomy::node(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    if (it == index_.end()) throw UnknownType("unknown taxonomy node: " + std::string(id));
    return nodes_[it->second];
}

const TaxonomyNode* Taxonomy::find_by_label(std::string_view label) const {
    const auto it = by_label_.find(fold_label(label));
    return it == by_label_.end() ? nullptr : &nodes_[it->second];
}

std::vector<const TaxonomyNode*> Taxonomy::children(std::string_view id) const {
    node(id);
    std::vector<const TaxonomyNode*> out;
    for (const auto& n : nodes_)
        if (n.parent && *n.parent == id) out.push_back(&n);
    return out;
}

std::vector<std::string> Taxonomy::path_to(std::string_view id) const {
    std::vector<std::string> path;
    const TaxonomyNode* cur = &node(id);
    while (true) {
        path.push_back(cur->id);
        if (!cur->parent) break;
        cur = &node(*cur->parent);
    }
    return {path.rbegin(), path.rend()};
}

bool Taxonomy::is_valid_path(const std::vector<std::string>& path) const {
    if (path.empty() || !contains(path.back())) return false;
    return path_to(path.back()) == path;
}

bool Taxonomy::is_ancestor_or_self(std::string_view ancestor, std::string_view id) const {
    const TaxonomyNode* cur = &node(id);
    while (true) {
        if (cur->id == ancestor) return true;
        if (!cur->parent) return false;
        cur = &node(*cur->parent);
    }
}

const TaxonomyNode& Taxonomy::type_node(const std::vector<std::string>& path) const {
    if (path.empty()) throw Error("empty type path");
    for (const auto& id : path) {
        const auto& n = node(id);
        if (n.rank == Rank::Type) return n;
    }
    return node(path.back());
}

const TaxonomyNode* Taxonomy::match(std::string_view label, std::string_view within) const {
    const auto folded = fold_label(label);
    if (folded.empty()) return nullptr;

    // (alias match?, depth, insertion order): lower wins
    const TaxonomyNode* best = nullptr;
    std::tuple<int, std::size_t> best_key{};
    for (const auto& n : nodes_) {
        int quality = -1;
        if (fold_label(n.id) == folded || fold_label(n.label) == folded) {
            quality = 0;
        } else {
            for (const auto& a : n.aliases)
                if (fold_label(a) == folded) quality = 1;
        }
        if (quality < 0 || !is_ancestor_or_self(within, n.id)) continue;
        const std::tuple<int, std::size_t> key{quality, n.depth};
        if (!best || key < best_key) {
            best = &n;
            best_key = key;
        }
    }
    return best;
}

Classification Taxonomy::classify(std::string_view type_label,
                                  std::optional<std::string_view> subtype_label) const {
    if (fold_label(type_label).empty()) throw UnknownType("empty crisis type label");
    const TaxonomyNode* type = match(type_label, root().id);
    if (!type) throw UnknownType("unknown crisis type: " + std::string(type_label));

    Classification out{path_to(type->id), std::nullopt};
    if (subtype_label && !fold_label(*subtype_label).empty()) {
        if (const TaxonomyNode* sub = match(*subtype_label, type->id)) {
            out.path = path_to(sub->id);
        } else {
            out.warning = "unknown subtype '" + std::string(*subtype_label) + "' under " +
                          type->id + "; classified at type level";
        }
    }
    return out;
}

Taxonomy build_taxonomy() {
    Taxonomy t;
    t.add("Crisis", "Crisis", "", Rank::Root, {"Disaster"});

    t.add("Natural", "Natural", "Crisis", Rank::Group);
    t.add("ManMade", "Man-made", "Crisis", Rank::Group, {"Technological"});

    t.add("Extraterrestrial", "Extraterrestrial", "Natural", Rank::Subgroup);
    t.add("Climatological", "Climatological", "Natural", Rank::Subgroup);
    t.add("Biological", "Biological", "Natural", Rank::Subgroup);
    t.add("Geographical", "Geographical", "Natural", Rank::Subgroup, {"Geophysical"});
    t.add("Hydrological", "Hydrological", "Natural", Rank::Subgroup);
    t.add("Meteorological", "Meteorological", "Natural", Rank::Subgroup);

    t.add("Impact", "Impact", "Extraterrestrial", Rank::Type);
    t.add("Airburst", "Airburst", "Impact", Rank::Subtype);
    t.add("SpaceWeather", "Space Weather", "Extraterrestrial", Rank::Type);
    t.add("GeomagneticStorm", "Geomagnetic Storm", "SpaceWeather", Rank::Subtype);

    t.add("Drought", "Drought", "Climatological", Rank::Type);
    t.add("Wildfire", "Wildfire", "Climatological", Rank::Type);
    t.add("ForestFire", "Forest Fire", "Wildfire", Rank::Subtype);
    t.add("LandFire", "Land Fire", "Wildfire", Rank::Subtype, {"Land fire (Brush, Bush, Pasture)"});
    t.add("GlacialLakeOutburst", "Glacial Lake Outburst", "Climatological", Rank::Type);

    t.add("Epidemic", "Epidemic", "Biological", Rank::Type);
    t.add("BacterialDisease", "Bacterial Disease", "Epidemic", Rank::Subtype);
    t.add("ViralDisease", "Viral Disease", "Epidemic", Rank::Subtype);
    t.add("ParasiticDisease", "Parasitic Disease", "Epidemic", Rank::Subtype);
    t.add("InsectInfestation", "Insect Infestation", "Biological", Rank::Type);
    t.add("AnimalAccident", "Animal Accident", "Biological", Rank::Type);

    t.add("Earthquake", "Earthquake", "Geographical", Rank::Type);
    t.add("GroundMovement", "Ground Movement", "Earthquake", Rank::Subtype);
    t.add("Tsunami", "Tsunami", "Earthquake", Rank::Subtype);
    t.add("MassMovement", "Mass Movement", "Geographical", Rank::Type, {"Mass movement (dry)"});
    t.add("Rockfall", "Rockfall", "MassMovement", Rank::Subtype);
    t.add("Subsidence", "Subsidence", "MassMovement", Rank::Subtype, {"Sudden subsidence"});
    t.add("VolcanicActivity", "Volcanic Activity", "Geographical", Rank::Type);
    t.add("AshFall", "Ash Fall", "VolcanicActivity", Rank::Subtype);
    t.add("LavaFlow", "Lava Flow", "VolcanicActivity", Rank::Subtype);
    t.add("Landslide", "Landslide", "Geographical", Rank::Type, {"Mass movement (wet)"});
    t.add("Avalanche", "Avalanche", "Landslide", Rank::Subtype);
    t.add("Mudslide", "Mudslide", "Landslide", Rank::Subtype);

    t.add("Flood", "Flood", "Hydrological", Rank::Type);
    t.add("RiverineFlood", "Riverine Flood", "Flood", Rank::Subtype);
    t.add("FlashFlood", "Flash Flood", "Flood", Rank::Subtype);
    t.add("CoastalFlood", "Coastal Flood", "Flood", Rank::Subtype);
    t.add("IceJamFlood", "Ice Jam Flood", "Flood", Rank::Subtype);
    t.add("WaveAction", "Wave Action", "Hydrological", Rank::Type);
    t.add("RogueWave", "Rogue Wave", "WaveAction", Rank::Subtype);
    t.add("Seiche", "Seiche", "WaveAction", Rank::Subtype);

    t.add("ExtremeTemperature", "Extreme Temperature", "Meteorological", Rank::Type);
    t.add("HeatWave", "Heat Wave", "ExtremeTemperature", Rank::Subtype);
    t.add("ColdWave", "Cold Wave", "ExtremeTemperature", Rank::Subtype);
    t.add("SevereWinterConditions", "Severe Winter Conditions", "ExtremeTemperature", Rank::Subtype);
    t.add("Fog", "Fog", "Meteorological", Rank::Type);
    t.add("Storm", "Storm", "Meteorological", Rank::Type);
    t.add("TropicalCyclone", "Tropical Cyclone", "Storm", Rank::Subtype);
    t.add("ExtraTropicalStorm", "Extra-tropical Storm", "Storm", Rank::Subtype);
    t.add("ConvectiveStorm", "Convective Storm", "Storm", Rank::Subtype);

    t.add("IndustrialAccident", "Industrial Accident", "ManMade", Rank::Type);
    t.add("ChemicalSpill", "Chemical Spill", "IndustrialAccident", Rank::Subtype);
    t.add("Collapse", "Collapse", "IndustrialAccident", Rank::Subtype);
    t.add("Explosion", "Explosion", "IndustrialAccident", Rank::Subtype);
    t.add("GasLeak", "Gas Leak", "IndustrialAccident", Rank::Subtype);
    t.add("OilSpill", "Oil Spill", "IndustrialAccident", Rank::Subtype);
    t.add("IndustrialFire", "Industrial Fire", "IndustrialAccident", Rank::Subtype, {"Fire"});
    t.add("Poisoning", "Poisoning", "IndustrialAccident", Rank::Subtype);
    t.add("Radiation", "Radiation", "IndustrialAccident", Rank::Subtype);

    t.add("MiscellaneousAccident", "Miscellaneous Accident", "ManMade", Rank::Type);
    t.add("MiscellaneousCollapse", "Miscellaneous Collapse", "MiscellaneousAccident", Rank::Subtype,
          {"Collapse"});
    t.add("MiscellaneousExplosion", "Miscellaneous Explosion", "MiscellaneousAccident",
          Rank::Subtype, {"Explosion"});
    t.add("MiscellaneousFire", "Miscellaneous Fire", "MiscellaneousAccident", Rank::Subtype,
          {"Fire"});

    t.add("TransportAccident", "Transport Accident", "ManMade", Rank::Type);
    t.add("AirAccident", "Air Accident", "TransportAccident", Rank::Subtype, {"Air"});
    t.add("RoadAccident", "Road Accident", "TransportAccident", Rank::Subtype, {"Road"});
    t.add("RailAccident", "Rail Accident", "TransportAccident", Rank::Subtype, {"Rail"});
    t.add("WaterAccident", "Water Accident", "TransportAccident", Rank::Subtype, {"Water"});
    return t;
}

}  // namespace crisim
