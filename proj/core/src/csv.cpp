#include "crisim/csv.hpp"

#include <istream>
#include <iterator>
#include <ostream>

#include "crisim/error.hpp"

namespace crisim::csv {

std::vector<Row> read(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    std::vector<Row> rows;
    Row row;
    std::string field;
    bool quoted = false;     // inside a quoted section
    bool was_quoted = false;  // current field started with a quote
    std::size_t record = 1;
    std::size_t line = 1;

    const auto end_field = [&] {
        row.fields.push_back(std::move(field));
        field.clear();
        was_quoted = false;
    };
    const auto end_row = [&] {
        end_field();
        const bool blank = row.fields.size() == 1 && row.fields[0].empty();
        if (!blank) {
            row.number = record++;
            rows.push_back(std::move(row));
        }
        row = Row{};
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || was_quoted)
                    throw MalformedCsv(record, "unexpected quote inside field");
                quoted = was_quoted = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                [[fallthrough]];
            case '\n':
                ++line;
                end_row();
                break;
            default:
                if (was_quoted) throw MalformedCsv(record, "text after closing quote");
                field.push_back(c);
        }
    }
    if (quoted) throw MalformedCsv(record, "unbalanced quotes");
    if (!field.empty() || !row.fields.empty() || was_quoted) end_row();
    return rows;
}

std::vector<Row> read(std::istream& in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return read(text);
}

std::string escape(std::string_view field) {
    const bool needs = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                       (!field.empty() && (field.front() == ' ' || field.back() == ' '));
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

}  // namespace crisim::csv
