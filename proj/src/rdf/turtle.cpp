#include "kgcube/rdf/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "kgcube/error.hpp"
#include "kgcube/rdf/vocab.hpp"

namespace kgcube::rdf {

namespace {

bool is_pn_chars_base(unsigned char c) { return std::isalpha(c) || c >= 0x80; }
bool is_pn_chars_u(unsigned char c) { return is_pn_chars_base(c) || c == '_'; }
bool is_pn_chars(unsigned char c) { return is_pn_chars_u(c) || c == '-' || std::isdigit(c); }
bool is_hex(unsigned char c) { return std::isxdigit(c) != 0; }

void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

bool has_scheme(std::string_view iri) {
    if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
    for (std::size_t i = 1; i < iri.size(); ++i) {
        unsigned char c = iri[i];
        if (c == ':') return true;
        if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
    }
    return false;
}

std::string remove_dot_segments(std::string path) {
    std::vector<std::string> out;
    std::size_t i = 0;
    bool absolute = !path.empty() && path[0] == '/';
    std::string segment;
    std::vector<std::string> parts;
    std::stringstream ss(path);
    while (std::getline(ss, segment, '/')) parts.push_back(segment);
    if (!path.empty() && path.back() == '/') parts.emplace_back();
    for (i = 0; i < parts.size(); ++i) {
        const auto& p = parts[i];
        bool last = i + 1 == parts.size();
        if (p == ".") {
            if (last) out.emplace_back();
        } else if (p == "..") {
            if (out.size() > (absolute ? 1u : 0u)) out.pop_back();
            if (last) out.emplace_back();
        } else {
            out.push_back(p);
        }
    }
    std::string result;
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (k) result += '/';
        result += out[k];
    }
    if (absolute && (result.empty() || result[0] != '/')) result.insert(result.begin(), '/');
    return result;
}

// Minimal RFC 3986 reference resolution.
std::string resolve_iri(const std::string& base, const std::string& ref) {
    if (has_scheme(ref) || base.empty()) return ref;
    std::string scheme = base.substr(0, base.find(':') + 1);
    std::string rest = base.substr(scheme.size());
    std::string authority;
    std::string path = rest;
    if (rest.rfind("//", 0) == 0) {
        auto end = rest.find_first_of("/?#", 2);
        authority = rest.substr(0, end);
        path = end == std::string::npos ? "" : rest.substr(end);
    }
    std::string base_no_frag = base.substr(0, base.find('#'));
    if (ref.empty()) return base_no_frag;
    if (ref[0] == '#') return base_no_frag + ref;
    if (ref.rfind("//", 0) == 0) return scheme + ref;
    if (ref[0] == '?') return base_no_frag.substr(0, base_no_frag.find('?')) + ref;
    std::string path_no_query = path.substr(0, path.find_first_of("?#"));
    if (ref[0] == '/') return scheme + authority + remove_dot_segments(ref);
    std::string dir;
    auto slash = path_no_query.rfind('/');
    if (slash != std::string::npos) {
        dir = path_no_query.substr(0, slash + 1);
    } else if (!authority.empty()) {
        dir = "/";
    }
    // keep query/fragment of ref untouched
    auto qpos = ref.find_first_of("?#");
    std::string ref_path = ref.substr(0, qpos);
    std::string ref_tail = qpos == std::string::npos ? "" : ref.substr(qpos);
    return scheme + authority + remove_dot_segments(dir + ref_path) + ref_tail;
}

class Parser {
public:
    Parser(Graph& graph, std::string_view text, const TurtleOptions& options)
        : graph_(graph), src_(text), base_(options.base_iri) {}

    void run() {
        for (;;) {
            skip_ws();
            if (at_end()) break;
            statement();
        }
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw TurtleSyntaxError(msg, line_, col_); }

    bool at_end() const { return pos_ >= src_.size(); }
    unsigned char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : 0;
    }
    char get() {
        if (at_end()) fail("unexpected end of input");
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void expect(char c) {
        skip_ws();
        if (peek() != static_cast<unsigned char>(c)) {
            if (at_end()) fail(std::string("expected '") + c + "' but reached end of input");
            fail(std::string("expected '") + c + "' but found '" + static_cast<char>(peek()) + "'");
        }
        get();
    }
    void skip_ws() {
        while (!at_end()) {
            unsigned char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') get();
            } else if (std::isspace(c)) {
                get();
            } else {
                break;
            }
        }
    }
    bool starts_with_word_ci(std::string_view word) const {
        if (pos_ + word.size() > src_.size()) return false;
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (std::toupper(static_cast<unsigned char>(src_[pos_ + i])) != word[i]) return false;
        }
        unsigned char next = peek(word.size());
        return next == 0 || std::isspace(next) || next == '<';
    }
    bool starts_with(std::string_view word) const { return src_.substr(pos_, word.size()) == word; }

    void statement() {
        if (peek() == '@') {
            if (starts_with("@prefix")) {
                advance(7);
                prefix_directive();
                expect('.');
                return;
            }
            if (starts_with("@base")) {
                advance(5);
                base_directive();
                expect('.');
                return;
            }
            fail("unknown directive");
        }
        if (starts_with_word_ci("PREFIX")) {
            advance(6);
            prefix_directive();
            return;
        }
        if (starts_with_word_ci("BASE")) {
            advance(4);
            base_directive();
            return;
        }
        triples();
        expect('.');
    }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) get();
    }

    void prefix_directive() {
        skip_ws();
        std::string label;
        if (peek() != ':') label = pn_prefix();
        if (peek() != ':') fail("expected ':' after prefix label");
        get();
        skip_ws();
        if (peek() != '<') fail("expected IRI in prefix declaration");
        std::string ns = iriref();
        prefixes_[label] = ns;
        graph_.prefixes()[label] = ns;
    }

    void base_directive() {
        skip_ws();
        if (peek() != '<') fail("expected IRI in base declaration");
        base_ = iriref();
    }

    std::string pn_prefix() {
        std::string out;
        if (!is_pn_chars_base(peek())) fail("invalid prefix name");
        while (!at_end() && (is_pn_chars(peek()) || peek() == '.')) out += get();
        if (!out.empty() && out.back() == '.') fail("prefix name must not end with '.'");
        return out;
    }

    void triples() {
        if (peek() == '[') {
            Term subject = blank_node_property_list();
            skip_ws();
            if (peek() != '.') predicate_object_list(subject);
            return;
        }
        if (peek() == '(') fail("collections are not supported");
        Term subject = resource_or_blank();
        predicate_object_list(subject);
    }

    Term resource_or_blank() {
        skip_ws();
        if (peek() == '_' && peek(1) == ':') return blank_label();
        return Term::iri(iri());
    }

    void predicate_object_list(const Term& subject) {
        skip_ws();
        Term predicate = verb();
        object_list(subject, predicate);
        for (;;) {
            skip_ws();
            if (peek() != ';') return;
            while (peek() == ';') {
                get();
                skip_ws();
            }
            if (peek() == '.' || peek() == ']' || at_end()) return;
            predicate = verb();
            object_list(subject, predicate);
        }
    }

    Term verb() {
        skip_ws();
        if (peek() == 'a') {
            unsigned char next = peek(1);
            if (!is_pn_chars(next) && next != ':' && next != '.') {
                get();
                return Term::iri(std::string(vocab::rdf::type));
            }
        }
        if (peek() == '_' || peek() == '"' || peek() == '\'' || peek() == '[') fail("predicate must be an IRI");
        return Term::iri(iri());
    }

    void object_list(const Term& subject, const Term& predicate) {
        for (;;) {
            Term obj = object();
            graph_.insert(Triple(subject, predicate, obj));
            skip_ws();
            if (peek() != ',') return;
            get();
        }
    }

    Term object() {
        skip_ws();
        unsigned char c = peek();
        if (c == '<') return Term::iri(iri());
        if (c == '_' && peek(1) == ':') return blank_label();
        if (c == '[') return blank_node_property_list();
        if (c == '(') fail("collections are not supported");
        if (c == '"' || c == '\'') return rdf_literal();
        if (std::isdigit(c) || c == '+' || c == '-' || (c == '.' && std::isdigit(peek(1)))) return numeric_literal();
        if (keyword_ahead("true")) {
            advance(4);
            return Term::literal("true", std::string(vocab::xsd::boolean));
        }
        if (keyword_ahead("false")) {
            advance(5);
            return Term::literal("false", std::string(vocab::xsd::boolean));
        }
        if (at_end()) fail("expected object but reached end of input");
        return Term::iri(iri());
    }

    bool keyword_ahead(std::string_view word) const {
        if (!starts_with(word)) return false;
        unsigned char next = peek(word.size());
        return !is_pn_chars(next) && next != ':';
    }

    Term blank_node_property_list() {
        get();  // '['
        Term node = Term::blank(graph_.fresh_blank_label());
        skip_ws();
        if (peek() == ']') {
            get();
            return node;
        }
        predicate_object_list(node);
        expect(']');
        return node;
    }

    Term blank_label() {
        get();
        get();  // "_:"
        std::string label;
        unsigned char c = peek();
        if (!is_pn_chars_u(c) && !std::isdigit(c)) fail("invalid blank node label");
        while (!at_end()) {
            c = peek();
            if (is_pn_chars(c)) {
                label += get();
            } else if (c == '.' && (is_pn_chars(peek(1)) || peek(1) == '.')) {
                label += get();
            } else {
                break;
            }
        }
        auto it = blanks_.find(label);
        if (it == blanks_.end()) it = blanks_.emplace(label, Term::blank(graph_.fresh_blank_label())).first;
        return it->second;
    }

    std::string iri() {
        skip_ws();
        if (peek() == '<') return iriref();
        return prefixed_name();
    }

    unsigned long read_hex(int digits) {
        std::string hex;
        for (int i = 0; i < digits; ++i) {
            if (!is_hex(peek())) fail("invalid unicode escape");
            hex += get();
        }
        return std::stoul(hex, nullptr, 16);
    }

    std::string iriref() {
        get();  // '<'
        std::string out;
        for (;;) {
            if (at_end()) fail("unterminated IRI");
            char c = get();
            if (c == '>') break;
            if (c == '\\') {
                char e = get();
                if (e == 'u') {
                    append_utf8(out, read_hex(4));
                } else if (e == 'U') {
                    append_utf8(out, read_hex(8));
                } else {
                    fail("invalid escape in IRI");
                }
                continue;
            }
            unsigned char uc = static_cast<unsigned char>(c);
            if (uc <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
                fail("invalid character in IRI");
            }
            out += c;
        }
        return resolve_iri(base_, out);
    }

    std::string prefixed_name() {
        std::string prefix;
        if (peek() != ':') {
            if (!is_pn_chars_base(peek())) fail(std::string("unexpected character '") + static_cast<char>(peek()) + "'");
            prefix = pn_prefix();
        }
        if (peek() != ':') fail("expected ':' in prefixed name");
        get();
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) fail("undefined prefix '" + prefix + ":'");
        return it->second + pn_local();
    }

    bool local_continues(std::size_t ahead) const {
        unsigned char c = peek(ahead);
        return is_pn_chars(c) || c == ':' || c == '%' || c == '\\' || c == '.';
    }

    std::string pn_local() {
        std::string out;
        bool first = true;
        while (!at_end()) {
            unsigned char c = peek();
            if (is_pn_chars_u(c) || c == ':' || std::isdigit(c) || (!first && c == '-')) {
                out += get();
            } else if (c == '%') {
                if (!is_hex(peek(1)) || !is_hex(peek(2))) fail("invalid percent escape in local name");
                out += get();
                out += get();
                out += get();
            } else if (c == '\\') {
                get();
                char e = get();
                static constexpr std::string_view allowed = "_~.-!$&'()*+,;=/?#@%";
                if (allowed.find(e) == std::string_view::npos) fail("invalid escape in local name");
                out += e;
            } else if (c == '.' && !first && local_continues(1)) {
                out += get();
            } else {
                break;
            }
            first = false;
        }
        if (!out.empty() && out.back() == '.') fail("local name must not end with '.'");
        return out;
    }

    std::string string_body() {
        char quote = get();
        bool long_form = false;
        if (peek() == static_cast<unsigned char>(quote) && peek(1) == static_cast<unsigned char>(quote)) {
            get();
            get();
            long_form = true;
        } else if (peek() == static_cast<unsigned char>(quote)) {
            get();
            return {};
        }
        std::string out;
        for (;;) {
            if (at_end()) fail("unterminated literal");
            char c = get();
            if (c == quote) {
                if (!long_form) break;
                if (peek() == static_cast<unsigned char>(quote) && peek(1) == static_cast<unsigned char>(quote)) {
                    get();
                    get();
                    // a long string may end with up to two extra quotes
                    while (peek() == static_cast<unsigned char>(quote)) {
                        out += quote;
                        get();
                    }
                    break;
                }
                out += c;
                continue;
            }
            if (c == '\\') {
                char e = get();
                switch (e) {
                    case 't': out += '\t'; break;
                    case 'b': out += '\b'; break;
                    case 'n': out += '\n'; break;
                    case 'r': out += '\r'; break;
                    case 'f': out += '\f'; break;
                    case '"': out += '"'; break;
                    case '\'': out += '\''; break;
                    case '\\': out += '\\'; break;
                    case 'u': append_utf8(out, read_hex(4)); break;
                    case 'U': append_utf8(out, read_hex(8)); break;
                    default: fail("invalid escape sequence in literal");
                }
                continue;
            }
            if (!long_form && (c == '\n' || c == '\r')) fail("unterminated literal");
            out += c;
        }
        return out;
    }

    Term rdf_literal() {
        std::string lexical = string_body();
        if (peek() == '@') {
            get();
            std::string lang;
            while (std::isalpha(peek())) lang += get();
            while (peek() == '-' && std::isalnum(peek(1))) {
                lang += get();
                while (std::isalnum(peek())) lang += get();
            }
            if (lang.empty()) fail("empty language tag");
            return Term::lang_literal(std::move(lexical), std::move(lang));
        }
        if (peek() == '^' && peek(1) == '^') {
            get();
            get();
            return Term::literal(std::move(lexical), iri());
        }
        return Term::literal(std::move(lexical));
    }

    Term numeric_literal() {
        std::string out;
        if (peek() == '+' || peek() == '-') out += get();
        bool has_int = false;
        while (std::isdigit(peek())) {
            out += get();
            has_int = true;
        }
        bool has_frac = false;
        if (peek() == '.' && std::isdigit(peek(1))) {
            out += get();
            while (std::isdigit(peek())) out += get();
            has_frac = true;
        } else if (peek() == '.' && has_int && (peek(1) == 'e' || peek(1) == 'E')) {
            out += get();
        }
        bool has_exp = false;
        if (peek() == 'e' || peek() == 'E') {
            unsigned char n1 = peek(1);
            if (std::isdigit(n1) || ((n1 == '+' || n1 == '-') && std::isdigit(peek(2)))) {
                out += get();
                if (peek() == '+' || peek() == '-') out += get();
                while (std::isdigit(peek())) out += get();
                has_exp = true;
            }
        }
        if (!has_int && !has_frac) fail("invalid numeric literal");
        if (has_exp) return Term::literal(out, std::string(vocab::xsd::double_));
        if (has_frac) return Term::literal(out, std::string(vocab::xsd::decimal));
        return Term::literal(out, std::string(vocab::xsd::integer));
    }

    Graph& graph_;
    std::string_view src_;
    std::string base_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    std::unordered_map<std::string, std::string> prefixes_;
    std::unordered_map<std::string, Term> blanks_;
};

// ---- serialization -------------------------------------------------------

bool safe_local(std::string_view local) {
    if (local.empty()) return true;
    auto ok_inner = [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '-' || c == '.'; };
    unsigned char first = local[0];
    if (!(std::isalnum(first) || first == '_' || first == '%')) return false;
    for (std::size_t i = 0; i < local.size(); ++i) {
        unsigned char c = local[i];
        if (c == '%') {
            if (i + 2 >= local.size() || !is_hex(local[i + 1]) || !is_hex(local[i + 2])) return false;
            i += 2;
            continue;
        }
        if (!ok_inner(c)) return false;
    }
    return local.back() != '.';
}

std::string escape_iri(std::string_view iri) {
    std::string out;
    for (unsigned char c : iri) {
        if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
            c == '`' || c == '\\') {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04X", c);
            out += buf;
        } else {
            out += static_cast<char>(c);
        }
    }
    return out;
}

class Writer {
public:
    explicit Writer(const Graph& graph) : graph_(graph) {
        for (const auto& [label, ns] : graph.prefixes()) by_namespace_.emplace_back(ns, label);
        // longest namespace first so the most specific prefix wins
        std::sort(by_namespace_.begin(), by_namespace_.end(),
                  [](const auto& a, const auto& b) { return a.first.size() != b.first.size() ? a.first.size() > b.first.size() : a < b; });
    }

    std::string iri(const std::string& value) const {
        if (value == vocab::rdf::type) return "a";
        return name(value);
    }

    std::string name(const std::string& value) const {
        for (const auto& [ns, label] : by_namespace_) {
            if (value.size() >= ns.size() && value.compare(0, ns.size(), ns) == 0) {
                std::string_view local(value.data() + ns.size(), value.size() - ns.size());
                if (safe_local(local)) return label + ":" + std::string(local);
            }
        }
        return "<" + escape_iri(value) + ">";
    }

    std::string blank(const std::string& label) {
        bool ok = !label.empty() && std::all_of(label.begin(), label.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
        if (ok) return "_:" + label;
        auto it = relabel_.find(label);
        if (it == relabel_.end()) it = relabel_.emplace(label, "r" + std::to_string(relabel_.size())).first;
        return "_:" + it->second;
    }

    std::string term(const Term& t) {
        switch (t.kind()) {
            case TermKind::Iri: return name(t.value());
            case TermKind::Blank: return blank(t.value());
            case TermKind::Literal: {
                std::string out = "\"" + escape_string(t.value()) + "\"";
                if (!t.language().empty()) return out + "@" + t.language();
                if (t.datatype() == vocab::xsd::string) return out;
                return out + "^^" + name(t.datatype());
            }
        }
        return {};
    }

    std::string run() {
        std::ostringstream out;
        for (const auto& [label, ns] : graph_.prefixes()) out << "@prefix " << label << ": <" << escape_iri(ns) << "> .\n";
        auto triples = graph_.triples();
        if (!graph_.prefixes().empty() && !triples.empty()) out << '\n';
        std::size_t i = 0;
        while (i < triples.size()) {
            const Term& subject = triples[i].subject;
            out << term(subject);
            bool first_pred = true;
            while (i < triples.size() && triples[i].subject == subject) {
                const Term& predicate = triples[i].predicate;
                out << (first_pred ? " " : " ;\n    ") << iri(predicate.value());
                first_pred = false;
                bool first_obj = true;
                while (i < triples.size() && triples[i].subject == subject && triples[i].predicate == predicate) {
                    out << (first_obj ? " " : ", ") << term(triples[i].object);
                    first_obj = false;
                    ++i;
                }
            }
            out << " .\n";
        }
        return out.str();
    }

private:
    const Graph& graph_;
    std::vector<std::pair<std::string, std::string>> by_namespace_;
    std::map<std::string, std::string> relabel_;
};

}  // namespace

void parse_turtle_into(Graph& into, std::string_view text, const TurtleOptions& options) {
    Parser parser(into, text, options);
    parser.run();
}

Graph parse_turtle(std::string_view text, const TurtleOptions& options) {
    Graph g;
    parse_turtle_into(g, text, options);
    return g;
}

Graph load_turtle_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open Turtle file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    TurtleOptions options;
    options.base_iri = "file://" + std::filesystem::absolute(path).string();
    return parse_turtle(buf.str(), options);
}

std::string serialize_turtle(const Graph& graph) { return Writer(graph).run(); }

void save_turtle_file(const Graph& graph, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write Turtle file: " + path.string());
    out << serialize_turtle(graph);
}

}  // namespace kgcube::rdf
