#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "crisim/knowledge_base.hpp"
#include "crisim/numeric.hpp"

namespace crisim {

namespace turtle {

struct Term {
    enum class Kind { Iri, Blank, Literal };
    Kind kind = Kind::Iri;
    std::string value;     // expanded IRI, blank label with "_:" prefix, or literal lexical form
    std::string datatype;  // expanded IRI; empty for plain literals
    std::string language;
};

struct Statement {
    Term subject;
    Term predicate;
    Term object;
    std::size_t line = 0;  // position of the subject
    std::size_t column = 0;
};

/// Parses the supported Turtle subset: @prefix/PREFIX directives, IRIs,
/// prefixed names, `a`, blank node labels, quoted strings with escapes,
/// language tags, typed literals, numeric and boolean literals, and `;`/`,`
/// lists. Throws TurtleSyntaxError with a 1-based line and column.
std::vector<Statement> parse(std::string_view text);

}  // namespace turtle

/// Canonical Turtle: the fixed prefix header, then subjects in IRI order with
/// predicates and objects sorted. Byte-stable for equal triple sets.
void serialize_turtle(const KnowledgeBase& kb, std::ostream& out);
void serialize_turtle(const TripleSet& set, const Taxonomy& taxonomy, std::ostream& out);
std::string to_turtle(const KnowledgeBase& kb);

/// Rebuilds a knowledge base. Syntax errors raise TurtleSyntaxError;
/// statements outside the schema raise SchemaViolation.
KnowledgeBase parse_turtle(std::string_view text, Taxonomy taxonomy = build_taxonomy());
KnowledgeBase parse_turtle(std::istream& in, Taxonomy taxonomy = build_taxonomy());

/// Standalone class hierarchy as rdfs:subClassOf assertions.
void serialize_taxonomy(const Taxonomy& taxonomy, std::ostream& out);

}  // namespace crisim
