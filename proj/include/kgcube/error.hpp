#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kgcube {

// Root of every exception the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed RDF term or triple (empty IRI, literal subject, ...).
class RdfError : public Error {
public:
    using Error::Error;
};

class TurtleSyntaxError : public Error {
public:
    TurtleSyntaxError(const std::string& message, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Schema integrity failure. Carries the offending IRIs / violations.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& message, std::vector<std::string> details = {})
        : Error(message), details_(std::move(details)) {}

    const std::vector<std::string>& details() const noexcept { return details_; }

private:
    std::vector<std::string> details_;
};

class MappingError : public Error {
public:
    using Error::Error;
};

class CsvError : public Error {
public:
    using Error::Error;
};

// Errors raised while evaluating a mapping expression against a row.
class ExpressionError : public Error {
public:
    using Error::Error;
};

class EtlError : public Error {
public:
    EtlError(std::string phase, const std::string& cause)
        : Error(phase + ": " + cause), phase_(std::move(phase)), cause_(cause) {}

    const std::string& phase() const noexcept { return phase_; }
    const std::string& cause() const noexcept { return cause_; }

private:
    std::string phase_;
    std::string cause_;
};

// Invalid OLAP query or operation. `violations` lists each broken invariant.
class QueryError : public Error {
public:
    explicit QueryError(const std::string& message, std::vector<std::string> violations = {})
        : Error(message), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

class MetricError : public Error {
public:
    using Error::Error;
};

}  // namespace kgcube
