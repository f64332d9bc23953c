#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace crisim::csv {

struct Row {
    std::size_t number = 0;  // 1-based physical record number, header = 1
    std::vector<std::string> fields;
};

/// RFC 4180 reader: quoted fields, doubled quotes, embedded newlines, CRLF.
/// Blank lines are skipped and a UTF-8 BOM is ignored. Throws MalformedCsv
/// on an unterminated quote or stray quote inside an unquoted field.
std::vector<Row> read(std::string_view text);
std::vector<Row> read(std::istream& in);

/// Quotes a field only when it contains a comma, quote, CR or LF, or has
/// leading/trailing spaces.
std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace crisim::csv
