#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace kgcube::rdf {

enum class TermKind : unsigned char { Iri = 0, Blank = 1, Literal = 2 };

// An RDF term: IRI, blank node, or literal. Literal equality is term
// equality over (lexical form, datatype, language tag); numeric value
// equality is an evaluator concern.
class Term {
public:
    Term() = default;

    static Term iri(std::string value);
    static Term blank(std::string label);
    static Term literal(std::string lexical, std::string datatype = {});
    static Term lang_literal(std::string lexical, std::string language);

    TermKind kind() const noexcept { return kind_; }
    bool is_iri() const noexcept { return kind_ == TermKind::Iri; }
    bool is_blank() const noexcept { return kind_ == TermKind::Blank; }
    bool is_literal() const noexcept { return kind_ == TermKind::Literal; }
    bool is_resource() const noexcept { return kind_ != TermKind::Literal; }

    // IRI text, blank node label, or literal lexical form.
    const std::string& value() const noexcept { return value_; }
    const std::string& datatype() const noexcept { return datatype_; }
    const std::string& language() const noexcept { return language_; }

    // N-Triples rendering: <iri>, _:label, "lex"^^<dt>, "lex"@lang.
    std::string to_ntriples() const;

    auto operator<=>(const Term&) const = default;
    bool operator==(const Term&) const = default;

private:
    Term(TermKind kind, std::string value, std::string datatype, std::string language)
        : kind_(kind), value_(std::move(value)), datatype_(std::move(datatype)), language_(std::move(language)) {}

    TermKind kind_ = TermKind::Iri;
    std::string value_;
    std::string datatype_;
    std::string language_;
};

// Shorthand for the common case.
inline Term iri(std::string value) { return Term::iri(std::move(value)); }
inline Term iri(std::string_view value) { return Term::iri(std::string(value)); }
inline Term iri(const char* value) { return Term::iri(std::string(value)); }

// Escapes a string for use inside a double-quoted Turtle/SPARQL literal.
std::string escape_string(std::string_view text);

// Local part of an IRI: the text after the last '#', '/' or ':'.
std::string local_name(std::string_view iri);

}  // namespace kgcube::rdf

template <>
struct std::hash<kgcube::rdf::Term> {
    std::size_t operator()(const kgcube::rdf::Term& t) const noexcept {
        std::size_t h = std::hash<std::string>{}(t.value());
        h ^= std::hash<std::string>{}(t.datatype()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<std::string>{}(t.language()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h ^ static_cast<std::size_t>(t.kind());
    }
};
