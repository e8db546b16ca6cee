#include "kgcube/olap/sparql.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "kgcube/mapping/expression.hpp"
#include "kgcube/rdf/term.hpp"
#include "kgcube/rdf/vocab.hpp"

namespace kgcube::olap {

namespace {

const std::string xsd_float(vocab::xsd::float_);
const std::string xsd_double(vocab::xsd::double_);

std::string render_slot(const Slot& s) {
    if (s.is_var) return "?" + s.text;
    if (s.text == vocab::rdf::type) return "a";
    if (s.text == vocab::qb::observation) return "qb:Observation";
    if (s.text == vocab::qb::data_set) return "qb:dataSet";
    if (s.text == vocab::qb4o::member_of) return "qb4o:memberOf";
    if (s.text == vocab::owl::same_as) return "owl:sameAs";
    return "<" + s.text + ">";
}

std::string render_number(const std::string& text) {
    double d = 0;
    mapping::parse_number(text, d);
    return mapping::format_number(d);
}

std::string render_filter(const BoundFilter& f, bool nested) {
    switch (f.kind) {
        case Filter::Kind::And:
        case Filter::Kind::Or: {
            if (f.children.empty()) return f.kind == Filter::Kind::And ? "true" : "false";
            if (f.children.size() == 1) return render_filter(f.children.front(), nested);
            std::string sep = f.kind == Filter::Kind::And ? " && " : " || ";
            std::string out;
            for (std::size_t i = 0; i < f.children.size(); ++i) {
                if (i) out += sep;
                out += render_filter(f.children[i], true);
            }
            return nested ? "(" + out + ")" : out;
        }
        case Filter::Kind::Attribute:
        case Filter::Kind::Measure: {
            std::string v = "?" + f.var;
            if (f.op == Comparator::Regex) {
                return "REGEX (" + v + ", \"" + rdf::escape_string(escape_regex(f.value)) + "\", \"i\")";
            }
            std::string op(to_string(f.op));
            if (f.numeric) return "<" + xsd_double + ">(" + v + ") " + op + " " + render_number(f.value);
            return "STR(" + v + ") " + op + " \"" + rdf::escape_string(f.value) + "\"";
        }
    }
    return "true";
}

std::string aggregate_projection(const AggregateBinding& a) {
    std::string fn(schema::to_string(a.function));
    if (a.function == AggregateFunction::Count) return "(COUNT(?" + a.var + ") as ?" + a.column + ")";
    return "(" + fn + "(<" + xsd_float + ">(?" + a.var + ")) as ?" + a.column + ")";
}

struct Parts {
    std::vector<std::string> prefixes;
    std::vector<std::string> projected;  // key variables
    std::vector<std::string> where;      // pattern lines
    std::vector<std::string> group_by;
    std::vector<std::string> order_by;
};

Parts local_parts(const AlgebraPlan& plan) {
    Parts p;
    p.prefixes = {"PREFIX qb: <" + std::string(vocab::qb_ns) + ">", "PREFIX qb4o: <" + std::string(vocab::qb4o_ns) + ">",
                  "PREFIX skos: <" + std::string(vocab::skos_ns) + ">"};
    for (const auto& k : plan.keys) p.projected.push_back(k.column);
    for (const auto& t : plan.patterns()) {
        p.where.push_back(render_slot(t.subject) + " " + render_slot(t.predicate) + " " + render_slot(t.object) + " .");
    }
    p.group_by = p.projected;
    p.order_by = plan.order_by;
    return p;
}

std::string assemble(const AlgebraPlan& plan, const Parts& p, const std::vector<std::string>& extra_where) {
    std::ostringstream out;
    for (const auto& l : p.prefixes) out << l << "\n";
    out << "SELECT";
    for (const auto& v : p.projected) out << " ?" << v;
    for (std::size_t i = 0; i < plan.aggregates.size(); ++i) out << (i ? "\n" : " ") << aggregate_projection(plan.aggregates[i]);
    out << "\nWHERE {\n";
    for (const auto& l : p.where) out << l << "\n";
    for (const auto& l : extra_where) out << l << "\n";
    if (plan.filter) out << "FILTER (" << render_filter(*plan.filter, false) << ")\n";
    out << "}\n";
    if (!p.group_by.empty()) {
        out << "GROUP BY";
        for (const auto& v : p.group_by) out << " ?" << v;
        out << "\n";
    }
    if (!p.order_by.empty()) {
        out << "ORDER BY";
        for (const auto& v : p.order_by) out << " ?" << v;
        out << "\n";
    }
    return out.str();
}

}  // namespace

std::string escape_regex(std::string_view text) {
    static constexpr std::string_view meta = "\\^$.|?*+()[]{}";
    std::string out;
    for (char c : text) {
        if (meta.find(c) != std::string_view::npos) out += '\\';
        out += c;
    }
    return out;
}

std::string emit_sparql(const AlgebraPlan& plan) { return assemble(plan, local_parts(plan), {}); }

std::vector<std::string> pattern_variables(std::string_view pattern) {
    std::vector<std::string> out;
    bool in_iri = false, in_string = false;
    char quote = 0;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        char c = pattern[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == quote) {
                in_string = false;
            }
            continue;
        }
        if (in_iri) {
            if (c == '>') in_iri = false;
            continue;
        }
        if (c == '"' || c == '\'') {
            in_string = true;
            quote = c;
        } else if (c == '<' && i + 1 < pattern.size() && !std::isspace(static_cast<unsigned char>(pattern[i + 1])) &&
                   pattern[i + 1] != '=') {
            in_iri = true;
        } else if (c == '#') {
            while (i < pattern.size() && pattern[i] != '\n') ++i;
        } else if ((c == '?' || c == '$') && i + 1 < pattern.size()) {
            std::size_t j = i + 1;
            while (j < pattern.size() && (std::isalnum(static_cast<unsigned char>(pattern[j])) || pattern[j] == '_')) ++j;
            if (j > i + 1) {
                std::string name(pattern.substr(i + 1, j - i - 1));
                if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
                i = j - 1;
            }
        }
    }
    return out;
}

bool level_has_links(const rdf::Graph& graph, std::string_view level) {
    auto member_of = graph.lookup(rdf::iri(vocab::qb4o::member_of));
    auto lv = graph.lookup(rdf::iri(level));
    auto same_as = graph.lookup(rdf::iri(vocab::owl::same_as));
    if (!member_of || !lv || !same_as) return false;
    bool found = false;
    graph.scan(std::nullopt, member_of, lv, [&](const rdf::Graph::Key& k) {
        if (found) return;
        graph.scan(k[0], same_as, std::nullopt, [&](const rdf::Graph::Key&) { found = true; });
    });
    return found;
}

std::string emit_federated_sparql(const OlapQuery& q, const schema::CubeSchema& schema, const FederatedSpec& spec,
                                  const rdf::Graph* graph) {
    auto blank = [](const std::string& s) {
        return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
    };
    if (blank(spec.pattern)) throw QueryError("federated query needs a non-empty external pattern");
    if (spec.endpoint.find("://") == std::string::npos) throw QueryError("federated endpoint must be an absolute IRI: " + spec.endpoint);
    if (!schema.level(spec.join_level)) throw QueryError("unknown join level " + spec.join_level);

    CompileOptions options;
    options.extra_levels.push_back(spec.join_level);
    auto plan = compile(q, schema, options);
    auto member = plan.member_var(spec.join_level);
    if (!member) throw QueryError("join level " + spec.join_level + " is not joined by the query");

    auto vars = pattern_variables(spec.pattern);
    if (std::find(vars.begin(), vars.end(), entity_var) == vars.end()) {
        throw QueryError("external pattern must use ?" + std::string(entity_var) + " for the linked resource");
    }
    std::set<std::string> local;
    for (const auto& p : plan.patterns()) {
        for (const Slot* s : {&p.subject, &p.predicate, &p.object}) {
            if (s->is_var) local.insert(s->text);
        }
    }
    for (const auto& a : plan.aggregates) local.insert(a.column);

    Parts parts = local_parts(plan);
    parts.prefixes.push_back("PREFIX owl: <" + std::string(vocab::owl_ns) + ">");
    for (const auto& v : vars) {
        if (v == entity_var || local.count(v)) continue;
        parts.projected.push_back(v);
        parts.group_by.push_back(v);
        parts.order_by.push_back(v);
    }

    std::string body = spec.pattern;
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.erase(body.begin());
    std::vector<std::string> extra{"?" + *member + " owl:sameAs ?" + entity_var + " .",
                                   "SERVICE <" + spec.endpoint + "> {", body, "}"};
    std::string text = assemble(plan, parts, extra);
    if (graph && !level_has_links(*graph, spec.join_level)) {
        text = "# WARNING: no member of " + spec.join_level + " has an owl:sameAs link; the SERVICE join is empty\n" + text;
    }
    return text;
}

}  // namespace kgcube::olap
