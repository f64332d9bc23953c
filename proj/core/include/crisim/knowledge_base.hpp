#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crisim/schema.hpp"
#include "crisim/taxonomy.hpp"
#include "crisim/triple.hpp"

namespace crisim {

struct KbStats {
    std::size_t classes = 0;
    std::size_t individuals = 0;
    std::size_t object_properties = 0;
    std::size_t data_properties = 0;
    std::size_t statements = 0;

    bool operator==(const KbStats&) const = default;
};

/// All supplied clauses must match.
struct CrisisFilter {
    std::optional<std::string> type;     // taxonomy node id; matches the node and its subtree
    std::optional<std::string> country;  // case- and punctuation-insensitive
    std::optional<std::pair<int, int>> years;  // inclusive range on the start year
};

/// In-memory triple store over the fixed schema vocabulary. Single writer;
/// once populated it may be shared read-only between threads.
class KnowledgeBase {
public:
    explicit KnowledgeBase(Taxonomy taxonomy = build_taxonomy());

    const Taxonomy& taxonomy() const noexcept { return taxonomy_; }
    std::string_view schema_version() const noexcept { return Schema::kVersion; }

    /// Set semantics: inserting a present triple is a no-op. Returns whether
    /// the triple was new. Throws SchemaViolation for undeclared predicates,
    /// ill-typed objects, or class references outside the taxonomy.
    bool insert(const Triple& triple);
    void insert(const TripleSet& set);

    /// Removes every triple with this subject; returns how many were removed.
    std::size_t remove_subject(std::string_view subject);

    /// Adds one rdfs:subClassOf statement per non-root taxonomy node.
    void assert_taxonomy();

    bool contains(const Triple& triple) const { return triples_.contains(triple); }
    std::size_t size() const noexcept { return triples_.size(); }
    bool empty() const noexcept { return triples_.empty(); }
    const std::set<Triple>& triples() const noexcept { return triples_; }

    std::vector<Triple> by_subject(std::string_view subject) const;
    std::vector<Triple> by_predicate(std::string_view predicate) const;

    bool has_crisis(std::string_view crisis_id) const;
    /// Sorted ascending.
    std::vector<std::string> crisis_ids() const;

    /// Subject-rooted description of one crisis in canonical order. Throws UnknownCrisis.
    TripleSet crisis_subgraph(std::string_view crisis_id) const;

    /// Taxonomy node the crisis is typed with. Throws UnknownCrisis.
    const TaxonomyNode& crisis_type(std::string_view crisis_id) const;

    KbStats stats() const;
    std::vector<std::string> list_crises(const CrisisFilter& filter) const;

private:
    const TaxonomyNode& class_node(const ObjectValue& object) const;

    Taxonomy taxonomy_;
    std::set<Triple> triples_;
    // predicate -> subject -> number of triples
    std::map<std::string, std::map<std::string, std::size_t>, std::less<>> predicate_index_;
};

}  // namespace crisim
