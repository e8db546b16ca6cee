#include "kgcube/rdf/graph.hpp"

#include <algorithm>

#include "kgcube/error.hpp"

namespace kgcube::rdf {

Triple::Triple(Term s, Term p, Term o) : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
    if (subject.is_literal()) throw RdfError("triple subject must be an IRI or blank node, got literal " + subject.to_ntriples());
    if (!predicate.is_iri()) throw RdfError("triple predicate must be an IRI, got " + predicate.to_ntriples());
}

TriplePattern::TriplePattern(PatternTerm s, PatternTerm p, PatternTerm o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
    if (const auto* t = std::get_if<Term>(&subject); t && t->is_literal()) {
        throw RdfError("pattern subject cannot be a literal");
    }
    if (const auto* t = std::get_if<Term>(&predicate); t && !t->is_iri()) {
        throw RdfError("pattern predicate must be an IRI or variable");
    }
}

Graph::TermId Graph::intern(const Term& term) {
    auto it = ids_.find(term);
    if (it != ids_.end()) return it->second;
    auto id = static_cast<TermId>(terms_.size());
    terms_.push_back(term);
    ids_.emplace(term, id);
    return id;
}

std::optional<Graph::TermId> Graph::lookup(const Term& term) const {
    auto it = ids_.find(term);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

bool Graph::insert(const Triple& t) {
    TermId s = intern(t.subject);
    TermId p = intern(t.predicate);
    TermId o = intern(t.object);
    if (!spo_.insert({s, p, o}).second) return false;
    pos_.insert({p, o, s});
    osp_.insert({o, s, p});
    return true;
}

// RDF merge: blank nodes of `other` are standardized apart.
void Graph::merge(const Graph& other) {
    std::unordered_map<std::string, Term> renamed;
    auto map_term = [&](const Term& t) -> Term {
        if (!t.is_blank()) return t;
        auto it = renamed.find(t.value());
        if (it == renamed.end()) it = renamed.emplace(t.value(), Term::blank(fresh_blank_label())).first;
        return it->second;
    };
    for (const auto& k : other.spo_) {
        insert(Triple(map_term(other.terms_[k[0]]), other.terms_[k[1]], map_term(other.terms_[k[2]])));
    }
    for (const auto& [prefix, ns] : other.prefixes_) prefixes_.emplace(prefix, ns);
}

bool Graph::contains(const Triple& t) const {
    auto s = lookup(t.subject);
    auto p = lookup(t.predicate);
    auto o = lookup(t.object);
    if (!s || !p || !o) return false;
    return spo_.count({*s, *p, *o}) != 0;
}

const std::set<Graph::Key>& Graph::index(IndexOrder order) const {
    switch (order) {
        case IndexOrder::Spo: return spo_;
        case IndexOrder::Pos: return pos_;
        case IndexOrder::Osp: return osp_;
    }
    return spo_;
}

std::size_t Graph::index_size(IndexOrder order) const { return index(order).size(); }

std::vector<Triple> Graph::find(const std::optional<Term>& s, const std::optional<Term>& p,
                                const std::optional<Term>& o) const {
    std::optional<TermId> sid, pid, oid;
    if (s) {
        sid = lookup(*s);
        if (!sid) return {};
    }
    if (p) {
        pid = lookup(*p);
        if (!pid) return {};
    }
    if (o) {
        oid = lookup(*o);
        if (!oid) return {};
    }
    std::vector<Triple> out;
    scan(sid, pid, oid, [&](const Key& k) { out.emplace_back(terms_[k[0]], terms_[k[1]], terms_[k[2]]); });
    return out;
}

std::vector<Term> Graph::objects(const Term& s, const Term& p) const {
    std::vector<Term> out;
    auto sid = lookup(s);
    auto pid = lookup(p);
    if (!sid || !pid) return out;
    scan(sid, pid, std::nullopt, [&](const Key& k) { out.push_back(terms_[k[2]]); });
    return out;
}

std::vector<Term> Graph::subjects(const Term& p, const Term& o) const {
    std::vector<Term> out;
    auto pid = lookup(p);
    auto oid = lookup(o);
    if (!pid || !oid) return out;
    scan(std::nullopt, pid, oid, [&](const Key& k) { out.push_back(terms_[k[0]]); });
    return out;
}

std::optional<Term> Graph::object(const Term& s, const Term& p) const {
    auto objs = objects(s, p);
    if (objs.empty()) return std::nullopt;
    return *std::min_element(objs.begin(), objs.end());
}

std::vector<Binding> Graph::bind_all(const TriplePattern& pattern, std::optional<IndexOrder> order) const {
    std::array<const PatternTerm*, 3> slots{&pattern.subject, &pattern.predicate, &pattern.object};
    std::array<std::optional<TermId>, 3> bound;
    for (std::size_t i = 0; i < 3; ++i) {
        if (const auto* t = std::get_if<Term>(slots[i])) {
            bound[i] = lookup(*t);
            if (!bound[i]) return {};
        }
    }
    std::vector<Binding> out;
    auto visit = [&](const Key& k) {
        Binding b;
        for (std::size_t i = 0; i < 3; ++i) {
            const auto* v = std::get_if<Variable>(slots[i]);
            if (!v) continue;
            auto [it, fresh] = b.emplace(v->name, terms_[k[i]]);
            if (!fresh && it->second != terms_[k[i]]) return;  // repeated variable must co-refer
        }
        out.push_back(std::move(b));
    };
    if (order) {
        scan_with(*order, bound[0], bound[1], bound[2], visit);
    } else {
        scan(bound[0], bound[1], bound[2], visit);
    }
    return out;
}

std::vector<Binding> Graph::match(const TriplePattern& pattern) const { return bind_all(pattern, std::nullopt); }

std::vector<Binding> Graph::match(const TriplePattern& pattern, IndexOrder order) const {
    return bind_all(pattern, order);
}

std::vector<Triple> Graph::triples() const {
    std::vector<Triple> out;
    out.reserve(spo_.size());
    for (const auto& k : spo_) out.emplace_back(terms_[k[0]], terms_[k[1]], terms_[k[2]]);
    std::sort(out.begin(), out.end());
    return out;
}

std::string Graph::fresh_blank_label() {
    for (;;) {
        std::string label = "b" + std::to_string(next_blank_++);
        if (!ids_.count(Term::blank(label))) return label;
    }
}

}  // namespace kgcube::rdf
