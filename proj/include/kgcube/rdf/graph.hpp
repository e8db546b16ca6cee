#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "kgcube/rdf/term.hpp"

namespace kgcube::rdf {

// subject in I ∪ B, predicate in I, object in I ∪ B ∪ L. Enforced on construction.
struct Triple {
    Triple(Term s, Term p, Term o);

    Term subject;
    Term predicate;
    Term object;

    auto operator<=>(const Triple&) const = default;
    bool operator==(const Triple&) const = default;
};

struct Variable {
    std::string name;
    auto operator<=>(const Variable&) const = default;
};

using PatternTerm = std::variant<Term, Variable>;

struct TriplePattern {
    TriplePattern(PatternTerm s, PatternTerm p, PatternTerm o);

    PatternTerm subject;
    PatternTerm predicate;
    PatternTerm object;
};

inline Variable var(std::string name) { return Variable{std::move(name)}; }

using Binding = std::map<std::string, Term>;

enum class IndexOrder { Spo, Pos, Osp };

// prefix label -> namespace IRI
using PrefixMap = std::map<std::string, std::string>;

// Indexed set of triples. Terms are interned; three orderings (SPO, POS,
// OSP) are kept in lockstep so any bound-position combination is a range
// scan. Not synchronized: build privately, then share as const.
class Graph {
public:
    using TermId = std::uint32_t;
    using Key = std::array<TermId, 3>;

    // Returns true when the triple was not present before.
    bool insert(const Triple& t);
    bool insert(Term s, Term p, Term o) { return insert(Triple(std::move(s), std::move(p), std::move(o))); }
    void merge(const Graph& other);

    bool contains(const Triple& t) const;
    std::size_t size() const noexcept { return spo_.size(); }
    bool empty() const noexcept { return spo_.empty(); }

    std::optional<TermId> lookup(const Term& term) const;
    const Term& term(TermId id) const { return terms_.at(id); }

    // Visits every stored key (in s,p,o order) matching the bound positions,
    // choosing the index with the longest bound prefix.
    template <class F>
    void scan(std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o, F&& visit) const;

    // Same as scan() but restricted to one index ordering; positions not in
    // that ordering's bound prefix are filtered. Used to check index coherence.
    template <class F>
    void scan_with(IndexOrder order, std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o,
                   F&& visit) const;

    std::vector<Triple> find(const std::optional<Term>& s, const std::optional<Term>& p,
                             const std::optional<Term>& o) const;
    std::vector<Term> objects(const Term& s, const Term& p) const;
    std::vector<Term> subjects(const Term& p, const Term& o) const;
    std::optional<Term> object(const Term& s, const Term& p) const;

    std::vector<Binding> match(const TriplePattern& pattern) const;
    std::vector<Binding> match(const TriplePattern& pattern, IndexOrder order) const;

    // All triples ordered by (subject, predicate, object) term order.
    std::vector<Triple> triples() const;
    std::size_t index_size(IndexOrder order) const;

    PrefixMap& prefixes() noexcept { return prefixes_; }
    const PrefixMap& prefixes() const noexcept { return prefixes_; }

    // Mints a blank node label unused by this graph.
    std::string fresh_blank_label();

private:
    TermId intern(const Term& term);
    const std::set<Key>& index(IndexOrder order) const;
    std::vector<Binding> bind_all(const TriplePattern& pattern, std::optional<IndexOrder> order) const;

    std::vector<Term> terms_;
    std::unordered_map<Term, TermId> ids_;
    std::set<Key> spo_;  // (s, p, o)
    std::set<Key> pos_;  // (p, o, s)
    std::set<Key> osp_;  // (o, s, p)
    PrefixMap prefixes_;
    std::size_t next_blank_ = 0;
};

namespace detail {

inline Graph::Key to_order(IndexOrder order, Graph::TermId s, Graph::TermId p, Graph::TermId o) {
    switch (order) {
        case IndexOrder::Spo: return {s, p, o};
        case IndexOrder::Pos: return {p, o, s};
        case IndexOrder::Osp: return {o, s, p};
    }
    return {s, p, o};
}

inline Graph::Key from_order(IndexOrder order, const Graph::Key& k) {
    switch (order) {
        case IndexOrder::Spo: return k;
        case IndexOrder::Pos: return {k[2], k[0], k[1]};
        case IndexOrder::Osp: return {k[1], k[2], k[0]};
    }
    return k;
}

}  // namespace detail

template <class F>
void Graph::scan_with(IndexOrder order, std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o,
                      F&& visit) const {
    std::array<std::optional<TermId>, 3> bound;
    switch (order) {
        case IndexOrder::Spo: bound = {s, p, o}; break;
        case IndexOrder::Pos: bound = {p, o, s}; break;
        case IndexOrder::Osp: bound = {o, s, p}; break;
    }
    std::size_t prefix = 0;
    while (prefix < 3 && bound[prefix]) ++prefix;

    const auto& idx = index(order);
    Key lo{0, 0, 0};
    for (std::size_t i = 0; i < prefix; ++i) lo[i] = *bound[i];
    auto it = idx.lower_bound(lo);
    for (; it != idx.end(); ++it) {
        const Key& k = *it;
        bool in_prefix = true;
        for (std::size_t i = 0; i < prefix; ++i) {
            if (k[i] != lo[i]) {
                in_prefix = false;
                break;
            }
        }
        if (!in_prefix) break;
        bool ok = true;
        for (std::size_t i = prefix; i < 3; ++i) {
            if (bound[i] && k[i] != *bound[i]) {
                ok = false;
                break;
            }
        }
        if (ok) visit(detail::from_order(order, k));
    }
}

template <class F>
void Graph::scan(std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o, F&& visit) const {
    IndexOrder order = IndexOrder::Spo;
    if (s && !p && o) {
        order = IndexOrder::Osp;
    } else if (!s && p) {
        order = IndexOrder::Pos;
    } else if (!s && !p && o) {
        order = IndexOrder::Osp;
    }
    scan_with(order, s, p, o, std::forward<F>(visit));
}

}  // namespace kgcube::rdf
