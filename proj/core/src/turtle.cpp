#include "crisim/turtle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>

#include "crisim/error.hpp"
#include "crisim/record.hpp"
#include "utf8.hpp"

namespace crisim {

namespace turtle {

namespace {

bool is_name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-' || c == '.' || (static_cast<unsigned char>(c) >= 0x80);
}

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::vector<Statement> run() {
        std::vector<Statement> out;
        while (skip_ws(), !eof()) {
            if (starts_with("@prefix")) {
                advance(7);
                prefix_declaration();
                skip_ws();
                expect('.');
            } else if (starts_with_keyword("PREFIX")) {
                advance(6);
                prefix_declaration();
            } else if (starts_with("@base") || starts_with_keyword("BASE")) {
                error("@base is not supported");
            } else {
                triples(out);
                skip_ws();
                expect('.');
            }
        }
        return out;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        throw TurtleSyntaxError(line_, column_, what);
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
    bool starts_with_keyword(std::string_view kw) const {
        if (text_.size() - pos_ < kw.size() + 1) return false;
        for (std::size_t i = 0; i < kw.size(); ++i)
            if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != kw[i]) return false;
        return is_ws(text_[pos_ + kw.size()]);
    }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && !eof(); ++i) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
            ++pos_;
        }
    }

    void skip_ws() {
        while (!eof()) {
            if (is_ws(peek())) {
                advance();
            } else if (peek() == '#') {
                while (!eof() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        if (eof()) error(std::string("expected '") + c + "' but reached end of input");
        if (peek() != c) error(std::string("expected '") + c + "'");
        advance();
    }

    void prefix_declaration() {
        skip_ws();
        std::string name;
        while (!eof() && peek() != ':' && is_name_char(peek())) {
            name.push_back(peek());
            advance();
        }
        if (peek() != ':') error("expected prefix name ending in ':'");
        advance();
        skip_ws();
        if (peek() != '<') error("expected IRI in prefix declaration");
        prefixes_[name] = iri_ref();
    }

    std::string iri_ref() {
        advance();  // '<'
        std::string iri;
        while (true) {
            if (eof()) error("unterminated IRI");
            const char c = peek();
            if (c == '>') break;
            if (is_ws(c) || c == '<' || c == '"') error("invalid character in IRI");
            iri.push_back(c);
            advance();
        }
        advance();
        return iri;
    }

    std::string prefixed_name() {
        std::string prefix;
        while (!eof() && peek() != ':' && is_name_char(peek())) {
            prefix.push_back(peek());
            advance();
        }
        if (peek() != ':') error("expected IRI, prefixed name, or literal");
        advance();
        const auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) error("undeclared prefix '" + prefix + ":'");

        std::string local;
        while (!eof()) {
            const char c = peek();
            if (c == '\\' && pos_ + 1 < text_.size()) {
                advance();
                local.push_back(peek());
                advance();
            } else if (is_name_char(c) || c == ':' || c == '%') {
                local.push_back(c);
                advance();
            } else {
                break;
            }
        }
        // a trailing '.' terminates the statement rather than the name
        while (!local.empty() && local.back() == '.') {
            local.pop_back();
            --pos_;
            --column_;
        }
        return it->second + local;
    }

    Term blank_node() {
        advance(2);  // "_:"
        std::string label;
        while (!eof() && is_name_char(peek())) {
            label.push_back(peek());
            advance();
        }
        while (!label.empty() && label.back() == '.') {
            label.pop_back();
            --pos_;
            --column_;
        }
        if (label.empty()) error("empty blank node label");
        return {Term::Kind::Blank, "_:" + label, {}, {}};
    }

    Term resource() {
        if (peek() == '<') return {Term::Kind::Iri, iri_ref(), {}, {}};
        if (peek() == '_' && peek(1) == ':') return blank_node();
        if (peek() == '[') error("anonymous blank nodes are not supported");
        if (peek() == '(') error("collections are not supported");
        return {Term::Kind::Iri, prefixed_name(), {}, {}};
    }

    Term predicate() {
        if (peek() == 'a' && (is_ws(peek(1)) || peek(1) == '<' || peek(1) == '"')) {
            advance();
            return {Term::Kind::Iri, ns::kRdf + "type", {}, {}};
        }
        const auto term = resource();
        if (term.kind != Term::Kind::Iri) error("predicate must be an IRI");
        return term;
    }

    void hex_escape(std::string& out, std::size_t digits) {
        char32_t cp = 0;
        for (std::size_t i = 0; i < digits; ++i) {
            const char c = peek();
            int v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
            else error("invalid unicode escape");
            cp = cp * 16 + static_cast<char32_t>(v);
            advance();
        }
        utf8::append(out, cp);
    }

    std::string quoted_string() {
        const bool long_form = starts_with("\"\"\"");
        advance(long_form ? 3 : 1);
        std::string value;
        while (true) {
            if (eof()) error("unterminated string literal");
            const char c = peek();
            if (long_form ? starts_with("\"\"\"") : c == '"') break;
            if (!long_form && (c == '\n' || c == '\r')) error("newline in string literal");
            if (c == '\\') {
                advance();
                const char e = peek();
                advance();
                switch (e) {
                    case 't': value.push_back('\t'); break;
                    case 'b': value.push_back('\b'); break;
                    case 'n': value.push_back('\n'); break;
                    case 'r': value.push_back('\r'); break;
                    case 'f': value.push_back('\f'); break;
                    case '"': value.push_back('"'); break;
                    case '\'': value.push_back('\''); break;
                    case '\\': value.push_back('\\'); break;
                    case 'u': hex_escape(value, 4); break;
                    case 'U': hex_escape(value, 8); break;
                    default: error("invalid escape sequence");
                }
                continue;
            }
            value.push_back(c);
            advance();
        }
        advance(long_form ? 3 : 1);
        return value;
    }

    Term literal() {
        Term t{Term::Kind::Literal, quoted_string(), {}, {}};
        if (peek() == '@') {
            advance();
            while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
                t.language.push_back(peek());
                advance();
            }
            if (t.language.empty()) error("empty language tag");
        } else if (starts_with("^^")) {
            advance(2);
            const auto dt = resource();
            if (dt.kind != Term::Kind::Iri) error("datatype must be an IRI");
            t.datatype = dt.value;
        }
        return t;
    }

    Term numeric() {
        std::string lex;
        auto take_digits = [&] {
            std::size_t n = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                lex.push_back(peek());
                advance();
                ++n;
            }
            return n;
        };
        if (peek() == '+' || peek() == '-') {
            lex.push_back(peek());
            advance();
        }
        std::size_t digits = take_digits();
        bool decimal = false;
        bool exponent = false;
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            decimal = true;
            lex.push_back('.');
            advance();
            digits += take_digits();
        }
        if (digits == 0) error("malformed numeric literal");
        if (peek() == 'e' || peek() == 'E') {
            exponent = true;
            lex.push_back(peek());
            advance();
            if (peek() == '+' || peek() == '-') {
                lex.push_back(peek());
                advance();
            }
            if (take_digits() == 0) error("malformed exponent");
        }
        const char* type = exponent ? "double" : decimal ? "decimal" : "integer";
        return {Term::Kind::Literal, lex, ns::kXsd + type, {}};
    }

    Term object() {
        const char c = peek();
        if (c == '"') return literal();
        if (c == '+' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c)))
            return numeric();
        for (const std::string_view kw : {"true", "false"}) {
            if (starts_with(kw) && !is_name_char(peek(kw.size())) && peek(kw.size()) != ':') {
                advance(kw.size());
                return {Term::Kind::Literal, std::string(kw), ns::kXsd + "boolean", {}};
            }
        }
        return resource();
    }

    void triples(std::vector<Statement>& out) {
        const std::size_t line = line_;
        const std::size_t column = column_;
        const Term subject = resource();
        while (true) {
            skip_ws();
            const Term pred = predicate();
            while (true) {
                skip_ws();
                if (eof()) error("expected object but reached end of input");
                out.push_back({subject, pred, object(), line, column});
                skip_ws();
                if (peek() != ',') break;
                advance();
            }
            if (peek() != ';') break;
            while (peek() == ';') {
                advance();
                skip_ws();
            }
            if (peek() == '.') break;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    std::map<std::string, std::string> prefixes_;
};

}  // namespace

std::vector<Statement> parse(std::string_view text) { return Parser(text).run(); }

}  // namespace turtle

namespace {

const std::vector<std::pair<std::string, std::string>>& prefixes() {
    static const std::vector<std::pair<std::string, std::string>> p = {
        {"cr", ns::kOntology}, {"kb", ns::kKb}, {"rdf", ns::kRdf}, {"rdfs", ns::kRdfs}, {"xsd", ns::kXsd}};
    return p;
}

bool is_safe_local(std::string_view local) {
    if (local.empty() || local.front() == '-' || local.front() == '.' || local.back() == '.')
        return false;
    return std::all_of(local.begin(), local.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '-' || c == '.';
    });
}

std::string write_iri(std::string_view iri) {
    if (iri.starts_with("_:")) return std::string(iri);
    for (const auto& [name, space] : prefixes()) {
        if (iri.starts_with(space) && is_safe_local(iri.substr(space.size())))
            return name + ":" + std::string(iri.substr(space.size()));
    }
    return "<" + std::string(iri) + ">";
}

std::string write_string(std::string_view s) {
    std::string out = "\"";
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

std::string write_object(const PropertySpec& spec, const ObjectValue& object, const Taxonomy& taxonomy) {
    if (spec.type == ValueType::ClassRef) {
        const auto* node = taxonomy.find_by_label(std::get<Qualitative>(object).text);
        if (!node) throw SchemaViolation("class label not in taxonomy: " + std::get<Qualitative>(object).text);
        return write_iri(class_iri(node->id));
    }
    if (spec.type == ValueType::String) return write_string(std::get<Qualitative>(object).text);

    const auto& values = std::get<Quantitative>(object).values;
    switch (spec.type) {
        case ValueType::Integer: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(values.at(0)));
            return buf;
        }
        case ValueType::Decimal: {
            auto text = format_number(values.at(0));
            if (text.find_first_of(".eE") == std::string::npos) text += ".0";
            return text;
        }
        case ValueType::Date: {
            const auto d = PartialDate::from_epoch_day(static_cast<std::int64_t>(values.at(0)));
            char buf[32];
            std::snprintf(buf, sizeof buf, "\"%04d-%02u-%02u\"^^", d.year, *d.month, *d.day);
            return buf + write_iri(ns::kXsd + "date");
        }
        case ValueType::Vector: {
            std::string text;
            for (const double v : values) {
                if (!text.empty()) text.push_back(' ');
                text += format_number(v);
            }
            return "\"" + text + "\"^^" + write_iri(vocab::kVectorDatatype);
        }
        default: break;
    }
    throw SchemaViolation("unsupported value type");
}

template <typename It>
void write_body(It first, It last, const Taxonomy& taxonomy, std::ostream& out) {
    const auto& schema = Schema::instance();
    for (auto it = first; it != last;) {
        const auto& subject = it->subject;
        out << "\n" << write_iri(subject);
        bool first_predicate = true;
        while (it != last && it->subject == subject) {
            const auto& predicate = it->predicate;
            const auto* spec = schema.find(predicate);
            if (!spec) throw SchemaViolation("undeclared predicate: " + predicate);
            out << (first_predicate ? " " : " ;\n    ")
                << (predicate == vocab::kType ? std::string("a") : write_iri(predicate)) << " ";
            first_predicate = false;
            bool first_object = true;
            while (it != last && it->subject == subject && it->predicate == predicate) {
                if (!first_object) out << ", ";
                out << write_object(*spec, it->object, taxonomy);
                first_object = false;
                ++it;
            }
        }
        out << " .\n";
    }
}

void write_header(std::ostream& out) {
    for (const auto& [name, space] : prefixes()) out << "@prefix " << name << ": <" << space << "> .\n";
}

double parse_double(std::string_view lex, const std::string& context) {
    if (!lex.empty() && lex.front() == '+') lex.remove_prefix(1);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(lex.data(), lex.data() + lex.size(), v);
    if (ec != std::errc() || ptr != lex.data() + lex.size())
        throw SchemaViolation(context + "invalid number '" + std::string(lex) + "'");
    return v;
}

ObjectValue convert_object(const PropertySpec& spec, const turtle::Term& term, const Taxonomy& taxonomy,
                           const std::string& context) {
    using Kind = turtle::Term::Kind;
    if (spec.type == ValueType::ClassRef) {
        if (term.kind != Kind::Iri || !term.value.starts_with(ns::kOntology) ||
            !taxonomy.contains(term.value.substr(ns::kOntology.size())))
            throw SchemaViolation(context + "object is not a taxonomy class: " + term.value);
        return Qualitative{taxonomy.node(term.value.substr(ns::kOntology.size())).label};
    }
    if (term.kind != Kind::Literal)
        throw SchemaViolation(context + "expected a literal object for " + spec.iri);

    switch (spec.type) {
        case ValueType::String:
            if (!term.datatype.empty() && term.datatype != ns::kXsd + "string")
                throw SchemaViolation(context + "expected a string literal");
            return Qualitative{term.value};
        case ValueType::Integer:
        case ValueType::Decimal:
            if (term.datatype != ns::kXsd + "integer" && term.datatype != ns::kXsd + "decimal" &&
                term.datatype != ns::kXsd + "double")
                throw SchemaViolation(context + "expected a numeric literal");
            return Quantitative{{parse_double(term.value, context)}};
        case ValueType::Date: {
            if (term.datatype != ns::kXsd + "date") throw SchemaViolation(context + "expected xsd:date");
            int y = 0;
            unsigned m = 0, d = 0;
            char tail = 0;
            if (std::sscanf(term.value.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3)
                throw SchemaViolation(context + "malformed date '" + term.value + "'");
            const PartialDate date{y, m, d};
            if (!date.is_valid()) throw SchemaViolation(context + "invalid date '" + term.value + "'");
            return Quantitative{{static_cast<double>(date.epoch_day())}};
        }
        case ValueType::Vector: {
            if (term.datatype != vocab::kVectorDatatype)
                throw SchemaViolation(context + "expected a vector literal");
            std::vector<double> values;
            std::istringstream in(term.value);
            std::string part;
            while (in >> part) values.push_back(parse_double(part, context));
            return Quantitative{std::move(values)};
        }
        default: break;
    }
    throw SchemaViolation(context + "unsupported value type");
}

}  // namespace

void serialize_turtle(const KnowledgeBase& kb, std::ostream& out) {
    write_header(out);
    write_body(kb.triples().begin(), kb.triples().end(), kb.taxonomy(), out);
}

void serialize_turtle(const TripleSet& set, const Taxonomy& taxonomy, std::ostream& out) {
    auto triples = set.triples;
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
    write_header(out);
    write_body(triples.begin(), triples.end(), taxonomy, out);
}

std::string to_turtle(const KnowledgeBase& kb) {
    std::ostringstream out;
    serialize_turtle(kb, out);
    return out.str();
}

KnowledgeBase parse_turtle(std::string_view text, Taxonomy taxonomy) {
    KnowledgeBase kb(std::move(taxonomy));
    const auto& schema = Schema::instance();
    for (const auto& st : turtle::parse(text)) {
        const std::string context = "line " + std::to_string(st.line) + ": ";
        const auto* spec = schema.find(st.predicate.value);
        if (!spec) throw SchemaViolation(context + "undeclared predicate: " + st.predicate.value);
        Triple t{st.subject.value, st.predicate.value,
                 convert_object(*spec, st.object, kb.taxonomy(), context)};
        try {
            kb.insert(t);
        } catch (const SchemaViolation& e) {
            throw SchemaViolation(context + e.what());
        }
    }
    return kb;
}

KnowledgeBase parse_turtle(std::istream& in, Taxonomy taxonomy) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_turtle(text, std::move(taxonomy));
}

void serialize_taxonomy(const Taxonomy& taxonomy, std::ostream& out) {
    KnowledgeBase kb(taxonomy);
    kb.assert_taxonomy();
    serialize_turtle(kb, out);
}

}  // namespace crisim
