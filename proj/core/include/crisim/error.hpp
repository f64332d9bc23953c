#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crisim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownType : public Error {
public:
    using Error::Error;
};

class InvalidRecord : public Error {
public:
    using Error::Error;
};

class SchemaViolation : public Error {
public:
    using Error::Error;
};

class UnknownCrisis : public Error {
public:
    explicit UnknownCrisis(std::string id)
        : Error("unknown crisis: " + id), id_(std::move(id)) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class MissingRequiredColumn : public Error {
public:
    explicit MissingRequiredColumn(const std::string& column)
        : Error("missing required column: " + column) {}
};

/// Structural CSV failure; row is 1-based and counts the header as row 1.
class MalformedCsv : public Error {
public:
    MalformedCsv(std::size_t row, const std::string& what)
        : Error("malformed CSV at row " + std::to_string(row) + ": " + what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class TurtleSyntaxError : public Error {
public:
    TurtleSyntaxError(std::size_t line, std::size_t column, const std::string& what)
        : Error("turtle syntax error at " + std::to_string(line) + ":" + std::to_string(column) +
                ": " + what),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class EmptyFile : public Error {
public:
    using Error::Error;
};

class EmptyPhrase : public Error {
public:
    using Error::Error;
};

class EmptySet : public Error {
public:
    using Error::Error;
};

}  // namespace crisim
