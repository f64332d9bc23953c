#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace crisim {

struct Qualitative {
    std::string text;
    bool operator==(const Qualitative&) const = default;
};

struct Quantitative {
    std::vector<double> values;  // dimension p >= 1, fixed per predicate
    bool operator==(const Quantitative&) const = default;
};

using ObjectValue = std::variant<Qualitative, Quantitative>;

enum class TripleKind { Qualitative, Quantitative };

inline TripleKind kind_of(const ObjectValue& v) noexcept {
    return std::holds_alternative<Quantitative>(v) ? TripleKind::Quantitative
                                                   : TripleKind::Qualitative;
}

/// Total order: text objects before numeric ones, then lexicographic.
bool object_less(const ObjectValue& a, const ObjectValue& b);

struct Triple {
    std::string subject;    // full IRI or _:label
    std::string predicate;  // full IRI
    ObjectValue object;

    bool operator==(const Triple&) const = default;
};

/// (subject, predicate, object) ordering used by the store.
bool operator<(const Triple& a, const Triple& b);

/// Canonical ordering within one crisis: predicate, then object, then subject.
bool canonical_less(const Triple& a, const Triple& b);

struct TripleSet {
    std::string crisis_id;
    std::vector<Triple> triples;

    bool empty() const noexcept { return triples.empty(); }
    std::size_t size() const noexcept { return triples.size(); }
    bool operator==(const TripleSet&) const = default;
};

/// Last segment of an IRI after '#', '/' or ':'.
std::string_view local_name(std::string_view iri);

}  // namespace crisim
