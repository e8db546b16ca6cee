#include "kgcube/rdf/term.hpp"

#include <algorithm>
#include <cctype>

#include "kgcube/error.hpp"
#include "kgcube/rdf/vocab.hpp"

namespace kgcube::rdf {

namespace {

bool has_whitespace(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

Term Term::iri(std::string value) {
    if (value.empty()) throw RdfError("IRI must not be empty");
    if (has_whitespace(value)) throw RdfError("IRI contains whitespace: " + value);
    return Term(TermKind::Iri, std::move(value), {}, {});
}

Term Term::blank(std::string label) {
    if (label.empty()) throw RdfError("blank node label must not be empty");
    return Term(TermKind::Blank, std::move(label), {}, {});
}

Term Term::literal(std::string lexical, std::string datatype) {
    if (datatype.empty()) datatype = std::string(vocab::xsd::string);
    if (datatype == vocab::rdf::lang_string) throw RdfError("language-tagged literal requires a language tag");
    if (has_whitespace(datatype)) throw RdfError("datatype IRI contains whitespace: " + datatype);
    return Term(TermKind::Literal, std::move(lexical), std::move(datatype), {});
}

Term Term::lang_literal(std::string lexical, std::string language) {
    if (language.empty()) throw RdfError("language tag must not be empty");
    std::transform(language.begin(), language.end(), language.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return Term(TermKind::Literal, std::move(lexical), std::string(vocab::rdf::lang_string), std::move(language));
}

std::string escape_string(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            default: out += c;
        }
    }
    return out;
}

std::string Term::to_ntriples() const {
    switch (kind_) {
        case TermKind::Iri: return "<" + value_ + ">";
        case TermKind::Blank: return "_:" + value_;
        case TermKind::Literal:
            if (!language_.empty()) return "\"" + escape_string(value_) + "\"@" + language_;
            if (datatype_ == vocab::xsd::string) return "\"" + escape_string(value_) + "\"";
            return "\"" + escape_string(value_) + "\"^^<" + datatype_ + ">";
    }
    return {};
}

std::string local_name(std::string_view iri) {
    auto pos = iri.find_last_of("#/:");
    if (pos == std::string_view::npos) return std::string(iri);
    return std::string(iri.substr(pos + 1));
}

}  // namespace kgcube::rdf
