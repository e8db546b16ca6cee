#include "kgcube/etl/abox.hpp"

#include <cctype>
#include <set>

#include "kgcube/rdf/vocab.hpp"

namespace kgcube::etl {

namespace {

constexpr const char* phase = "ABox Generation";

using rdf::Term;

[[noreturn]] void row_error(const mapping::TabularDataset& data, std::size_t row, const std::string& msg) {
    throw EtlError(phase, data.table.name + ": data row " + std::to_string(row + 1) + ": " + msg);
}

std::string eval(const mapping::Expression& e, const mapping::RowView& row, const mapping::TabularDataset& data,
                 std::size_t index) {
    try {
        return e.evaluate(row).str();
    } catch (const ExpressionError& err) {
        row_error(data, index, err.what());
    }
}

bool accepted(const mapping::ConceptMapping& cm, const mapping::RowView& row, const mapping::TabularDataset& data,
              std::size_t index) {
    try {
        return cm.matches(row);
    } catch (const ExpressionError& err) {
        row_error(data, index, err.what());
    }
}

bool is_integer_lexical(std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

Term typed_literal(const std::string& lex, const std::string& datatype, const mapping::TabularDataset& data,
                   std::size_t index, const std::string& attr) {
    if (datatype.empty() || datatype == vocab::xsd::string) return Term::literal(lex);
    if (datatype == vocab::xsd::integer || datatype.find("#int") != std::string::npos ||
        datatype.find("#long") != std::string::npos || datatype.find("Integer") != std::string::npos) {
        if (!is_integer_lexical(lex)) row_error(data, index, "'" + lex + "' is not an integer value for " + attr);
    } else if (schema::is_numeric_datatype(datatype)) {
        double d;
        if (!mapping::parse_number(lex, d)) row_error(data, index, "'" + lex + "' is not a numeric value for " + attr);
    }
    return Term::literal(lex, datatype);
}

}  // namespace

std::string percent_encode(std::string_view text) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : text) {
        if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 15];
        }
    }
    return out;
}

IriScheme::IriScheme(std::string base) : base_(std::move(base)) {
    if (base_.find("://") == std::string::npos) throw EtlError("ABox Generation", "base IRI must be absolute: " + base_);
}

std::string IriScheme::member(std::string_view level_iri, std::string_view key) const {
    return base_ + rdf::local_name(level_iri) + "/" + percent_encode(key);
}

std::string IriScheme::observation(std::string_view key) const { return base_ + "observation/" + percent_encode(key); }

rdf::Graph generate_level_members(const schema::CubeSchema& schema, const mapping::ConceptMapping& cm,
                                  const mapping::TabularDataset& data, const IriScheme& iris) {
    const schema::Level* level = schema.level(cm.target_concept);
    if (!level) throw EtlError(phase, cm.iri + ": target concept " + cm.target_concept + " is not a level");
    rdf::Graph g;
    const Term type = rdf::iri(vocab::rdf::type);
    const Term member_of = rdf::iri(vocab::qb4o::member_of);
    const Term level_member = rdf::iri(vocab::qb4o::level_member);
    const Term level_term = rdf::iri(level->iri);
    auto columns = data.table.column_names();
    std::set<std::string> keys;

    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        mapping::RowView row(columns, data.rows[i]);
        if (!accepted(cm, row, data, i)) continue;
        std::string key = eval(cm.iri_value, row, data, i);
        if (key.empty()) row_error(data, i, "empty member key");
        if (!keys.insert(key).second) row_error(data, i, "duplicate key '" + key + "' for level " + level->iri);
        Term m = rdf::iri(iris.member(level->iri, key));
        g.insert(m, type, level_member);
        g.insert(m, member_of, level_term);
        for (const auto& pm : cm.properties) {
            const schema::LevelAttribute* attr = level->attribute(pm.target_property);
            std::string v = eval(pm.source, row, data, i);
            if (v.empty()) continue;
            Term object = attr->kind == schema::AttributeKind::Object
                              ? rdf::iri(iris.member(attr->range, v))
                              : typed_literal(v, attr->range, data, i, attr->iri);
            g.insert(m, rdf::iri(attr->iri), object);
        }
    }
    return g;
}

rdf::Graph generate_observations(const schema::CubeSchema& schema, const mapping::ConceptMapping& cm,
                                 const mapping::TabularDataset& data, const schema::CubeDataset& dataset,
                                 const IriScheme& iris) {
    const schema::CuboidStructure* st = schema.structure(cm.target_concept);
    if (!st) throw EtlError(phase, cm.iri + ": target concept " + cm.target_concept + " is not a cuboid structure");
    if (dataset.structure != st->iri) {
        throw EtlError(phase, "dataset " + dataset.iri + " does not use structure " + st->iri);
    }
    for (const auto& b : st->levels) {
        if (!cm.property(b.level)) throw EtlError(phase, cm.iri + ": base level " + b.level + " has no property mapping");
    }
    rdf::Graph g;
    const Term type = rdf::iri(vocab::rdf::type);
    const Term observation = rdf::iri(vocab::qb::observation);
    const Term data_set = rdf::iri(vocab::qb::data_set);
    const Term ds = rdf::iri(dataset.iri);
    auto columns = data.table.column_names();
    std::set<std::string> keys;

    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        mapping::RowView row(columns, data.rows[i]);
        if (!accepted(cm, row, data, i)) continue;
        std::string key = eval(cm.iri_value, row, data, i);
        if (key.empty()) row_error(data, i, "empty observation key");
        if (!keys.insert(key).second) row_error(data, i, "duplicate observation key '" + key + "'");
        Term o = rdf::iri(iris.observation(key));
        g.insert(o, type, observation);
        g.insert(o, data_set, ds);
        for (const auto& b : st->levels) {
            std::string v = eval(cm.property(b.level)->source, row, data, i);
            if (v.empty()) row_error(data, i, "missing key for level " + b.level);
            g.insert(o, rdf::iri(b.level), rdf::iri(iris.member(b.level, v)));
        }
        for (const auto& m : st->measures) {
            const auto* pm = cm.property(m);
            if (!pm) continue;
            std::string v = eval(pm->source, row, data, i);
            if (v.empty()) continue;
            double d;
            if (!mapping::parse_number(v, d)) row_error(data, i, "measure " + m + " value '" + v + "' is not numeric");
            g.insert(o, rdf::iri(m), Term::literal(v, std::string(vocab::xsd::float_)));
        }
    }
    return g;
}

namespace {

bool is_member(const rdf::Graph& g, const Term& m, const std::string& level) {
    return g.contains(rdf::Triple(m, rdf::iri(vocab::qb4o::member_of), rdf::iri(level)));
}

}  // namespace

std::vector<std::string> dangling_rollups(const rdf::Graph& g, const schema::CubeSchema& schema) {
    std::vector<std::string> out;
    for (const auto& [iri, level] : schema.levels) {
        for (const auto& m : g.subjects(rdf::iri(vocab::qb4o::member_of), rdf::iri(iri))) {
            for (const auto& a : level.attributes) {
                if (a.kind != schema::AttributeKind::Object) continue;
                for (const auto& target : g.objects(m, rdf::iri(a.iri))) {
                    if (!is_member(g, target, a.range)) {
                        out.push_back(m.value() + " " + a.iri + " " + target.value() + ": not a member of " + a.range);
                    }
                }
            }
        }
    }
    return out;
}

std::vector<std::string> dangling_level_refs(const rdf::Graph& g, const schema::CubeSchema& schema) {
    std::vector<std::string> out;
    for (const auto& [iri, ds] : schema.datasets) {
        const auto* st = schema.structure(ds.structure);
        if (!st) continue;
        for (const auto& o : g.subjects(rdf::iri(vocab::qb::data_set), rdf::iri(iri))) {
            for (const auto& b : st->levels) {
                auto refs = g.objects(o, rdf::iri(b.level));
                if (refs.empty()) out.push_back(o.value() + ": no member for level " + b.level);
                for (const auto& r : refs) {
                    if (!is_member(g, r, b.level)) out.push_back(o.value() + " -> " + r.value() + ": not a member of " + b.level);
                }
            }
        }
    }
    return out;
}

}  // namespace kgcube::etl
