#include "crisim/triple.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "crisim/schema.hpp"

namespace crisim {

bool object_less(const ObjectValue& a, const ObjectValue& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    if (const auto* qa = std::get_if<Qualitative>(&a)) return qa->text < std::get<Qualitative>(b).text;
    const auto& va = std::get<Quantitative>(a).values;
    const auto& vb = std::get<Quantitative>(b).values;
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

bool operator<(const Triple& a, const Triple& b) {
    if (a.subject != b.subject) return a.subject < b.subject;
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    return object_less(a.object, b.object);
}

bool canonical_less(const Triple& a, const Triple& b) {
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    if (object_less(a.object, b.object)) return true;
    if (object_less(b.object, a.object)) return false;
    return a.subject < b.subject;
}

std::string_view local_name(std::string_view iri) {
    const auto pos = iri.find_last_of("#/:");
    return pos == std::string_view::npos ? iri : iri.substr(pos + 1);
}

const Schema& Schema::instance() {
    static const Schema schema;
    return schema;
}

Schema::Schema() {
    using V = ValueType;
    properties_ = {
        {vocab::kType, V::ClassRef, 0, true},
        {vocab::kSubClassOf, V::ClassRef, 0, true},
        {vocab::kLocation, V::String, 0, false},
        {vocab::kRegion, V::String, 0, false},
        {vocab::kCountry, V::String, 0, false},
        {vocab::kContinent, V::String, 0, false},
        {vocab::kCoordinates, V::Vector, 2, false},
        {vocab::kStartDate, V::Date, 1, false},
        {vocab::kEndDate, V::Date, 1, false},
        {vocab::kDuration, V::Integer, 1, false},
        {vocab::kTriggerOrigin, V::String, 0, false},
        {vocab::kMagnitudeScale, V::String, 0, false},
        {vocab::kMagnitudeValue, V::Decimal, 1, false},
        {vocab::kAffected, V::Integer, 1, false},
        {vocab::kInjured, V::Integer, 1, false},
        {vocab::kMissing, V::Integer, 1, false},
        {vocab::kDeaths, V::Integer, 1, false},
        {vocab::kTotalDamages, V::Decimal, 1, false},
        {vocab::kInsuredLosses, V::Decimal, 1, false},
        {vocab::kReconstructionCosts, V::Decimal, 1, false},
        {vocab::kInfrastructureDamage, V::String, 0, false},
    };
    std::sort(properties_.begin(), properties_.end(),
              [](const PropertySpec& a, const PropertySpec& b) { return a.iri < b.iri; });
}

const PropertySpec* Schema::find(std::string_view iri) const {
    const auto it = std::lower_bound(properties_.begin(), properties_.end(), iri,
                                     [](const PropertySpec& p, std::string_view v) { return p.iri < v; });
    return it != properties_.end() && it->iri == iri ? &*it : nullptr;
}

std::string Schema::check(const PropertySpec& spec, const ObjectValue& object) const {
    if (spec.kind() == TripleKind::Qualitative) {
        const auto* q = std::get_if<Qualitative>(&object);
        if (!q) return "expects a textual object";
        if (q->text.empty()) return "textual object must be non-empty";
        return {};
    }
    const auto* n = std::get_if<Quantitative>(&object);
    if (!n) return "expects a numeric object";
    if (n->values.size() != spec.dimension)
        return "expects a vector of dimension " + std::to_string(spec.dimension);
    for (const double v : n->values) {
        if (!std::isfinite(v)) return "numeric values must be finite";
        if ((spec.type == ValueType::Integer || spec.type == ValueType::Date) && v != std::floor(v))
            return "expects an integral value";
    }
    return {};
}

std::string crisis_iri(std::string_view crisis_id) { return ns::kKb + std::string(crisis_id); }

std::string class_iri(std::string_view node_id) { return ns::kOntology + std::string(node_id); }

}  // namespace crisim
