#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "crisim/triple.hpp"

namespace crisim {

namespace ns {
inline const std::string kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";
inline const std::string kOntology = "http://example.org/crisim/ontology#";
inline const std::string kKb = "http://example.org/crisim/kb/";
}  // namespace ns

namespace vocab {
inline const std::string kType = ns::kRdf + "type";
inline const std::string kSubClassOf = ns::kRdfs + "subClassOf";

inline const std::string kLocation = ns::kOntology + "hasLocation";
inline const std::string kRegion = ns::kOntology + "hasRegion";
inline const std::string kCountry = ns::kOntology + "hasCountry";
inline const std::string kContinent = ns::kOntology + "hasContinent";
inline const std::string kCoordinates = ns::kOntology + "hasCoordinates";
inline const std::string kStartDate = ns::kOntology + "hasStartDate";
inline const std::string kEndDate = ns::kOntology + "hasEndDate";
inline const std::string kDuration = ns::kOntology + "hasDurationDays";
inline const std::string kTriggerOrigin = ns::kOntology + "hasTriggerOrigin";
inline const std::string kMagnitudeScale = ns::kOntology + "hasMagnitudeScale";
inline const std::string kMagnitudeValue = ns::kOntology + "hasMagnitudeValue";
inline const std::string kAffected = ns::kOntology + "hasAffected";
inline const std::string kInjured = ns::kOntology + "hasInjured";
inline const std::string kMissing = ns::kOntology + "hasMissing";
inline const std::string kDeaths = ns::kOntology + "hasDeaths";
inline const std::string kTotalDamages = ns::kOntology + "hasTotalDamages";
inline const std::string kInsuredLosses = ns::kOntology + "hasInsuredLosses";
inline const std::string kReconstructionCosts = ns::kOntology + "hasReconstructionCosts";
inline const std::string kInfrastructureDamage = ns::kOntology + "hasInfrastructureDamage";

/// Datatype IRI for space-separated numeric vectors (coordinates).
inline const std::string kVectorDatatype = ns::kOntology + "vector";
}  // namespace vocab

/// How an object is written: class references become IRIs, everything else a literal.
enum class ValueType { ClassRef, String, Integer, Decimal, Date, Vector };

struct PropertySpec {
    std::string iri;
    ValueType type;
    std::size_t dimension;  // 0 for qualitative
    bool object_property;   // resource-valued (rdf:type, rdfs:subClassOf)

    TripleKind kind() const noexcept {
        return dimension == 0 ? TripleKind::Qualitative : TripleKind::Quantitative;
    }
};

/// The fixed property vocabulary every stored triple must use.
class Schema {
public:
    static const Schema& instance();

    const std::vector<PropertySpec>& properties() const noexcept { return properties_; }
    const PropertySpec* find(std::string_view iri) const;

    /// Empty string when `object` fits the property, else the reason it does not.
    std::string check(const PropertySpec& spec, const ObjectValue& object) const;

    static constexpr std::string_view kVersion = "1";

private:
    Schema();
    std::vector<PropertySpec> properties_;
};

std::string crisis_iri(std::string_view crisis_id);
std::string class_iri(std::string_view node_id);

}  // namespace crisim
