#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace crisim {

/// Position of a node in the CRED-style classification. EM-DAT "type" is the
/// level that disaster counts are reported at; man-made subgroups double as types.
enum class Rank { Root, Group, Subgroup, Type, Subtype };

struct TaxonomyNode {
    std::string id;     // PascalCase, doubles as IRI local name
    std::string label;  // unique human label
    std::optional<std::string> parent;
    std::size_t depth = 0;
    Rank rank = Rank::Root;
    std::vector<std::string> aliases;  // alternative source spellings
};

struct Classification {
    std::vector<std::string> path;  // root -> matched node
    std::optional<std::string> warning;
};

class Taxonomy {
public:
    /// Adds a node under `parent` (empty for the root). Throws on duplicates,
    /// unknown parents, or a second root.
    void add(std::string id, std::string label, std::string_view parent, Rank rank,
             std::vector<std::string> aliases = {});

    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<TaxonomyNode>& nodes() const noexcept { return nodes_; }
    const TaxonomyNode& root() const;

    bool contains(std::string_view id) const;
    const TaxonomyNode& node(std::string_view id) const;
    const TaxonomyNode* find_by_label(std::string_view label) const;

    std::vector<const TaxonomyNode*> children(std::string_view id) const;
    std::size_t depth(std::string_view id) const { return node(id).depth; }
    std::vector<std::string> path_to(std::string_view id) const;
    bool is_valid_path(const std::vector<std::string>& path) const;
    bool is_ancestor_or_self(std::string_view ancestor, std::string_view id) const;

    /// The node on `path` with Rank::Type, or the last node when the path
    /// stops above type level.
    const TaxonomyNode& type_node(const std::vector<std::string>& path) const;

    /// Maps source labels onto the deepest matching node. Matching ignores case
    /// and punctuation. An unrecognised subtype truncates to the type node and
    /// reports a warning; an unrecognised type throws UnknownType.
    Classification classify(std::string_view type_label,
                            std::optional<std::string_view> subtype_label = std::nullopt) const;

private:
    const TaxonomyNode* match(std::string_view label, std::string_view within) const;

    std::vector<TaxonomyNode> nodes_;
    std::unordered_map<std::string, std::size_t> index_;
    std::unordered_map<std::string, std::size_t> by_label_;
};

/// The crisis-type hierarchy: Natural and ManMade branches with their
/// subgroups, types, and the subtypes used by EM-DAT style sources.
Taxonomy build_taxonomy();

/// Lowercase alphanumeric folding used for label matching.
std::string fold_label(std::string_view text);

}  // namespace crisim
