#include "kgcube/rdf/isomorphism.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace kgcube::rdf {

namespace {

using Color = std::uint64_t;

Color mix(Color h, Color v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

struct Side {
    std::vector<Triple> ground;
    std::vector<Triple> with_blanks;
    std::vector<std::string> blanks;
    std::unordered_map<std::string, std::vector<std::size_t>> incident;  // blank -> triple indexes
    std::unordered_map<std::string, Color> color;
};

Side split(const Graph& g) {
    Side side;
    std::set<std::string> blanks;
    for (auto& t : g.triples()) {
        if (t.subject.is_blank() || t.object.is_blank()) {
            side.with_blanks.push_back(t);
            if (t.subject.is_blank()) blanks.insert(t.subject.value());
            if (t.object.is_blank()) blanks.insert(t.object.value());
        } else {
            side.ground.push_back(t);
        }
    }
    side.blanks.assign(blanks.begin(), blanks.end());
    for (std::size_t i = 0; i < side.with_blanks.size(); ++i) {
        const auto& t = side.with_blanks[i];
        if (t.subject.is_blank()) side.incident[t.subject.value()].push_back(i);
        if (t.object.is_blank() && t.object != t.subject) side.incident[t.object.value()].push_back(i);
    }
    for (const auto& b : side.blanks) side.color[b] = 1;
    return side;
}

Color term_color(const Side& side, const Term& t) {
    if (t.is_blank()) return mix(0xb1a4cULL, side.color.at(t.value()));
    return std::hash<Term>{}(t);
}

void refine(Side& side) {
    std::unordered_map<std::string, Color> next;
    for (const auto& b : side.blanks) {
        std::vector<Color> sig;
        for (auto i : side.incident[b]) {
            const auto& t = side.with_blanks[i];
            Color pc = std::hash<Term>{}(t.predicate);
            if (t.subject.is_blank() && t.subject.value() == b) sig.push_back(mix(mix(11, pc), term_color(side, t.object)));
            if (t.object.is_blank() && t.object.value() == b) sig.push_back(mix(mix(13, pc), term_color(side, t.subject)));
        }
        std::sort(sig.begin(), sig.end());
        Color c = side.color[b];
        for (auto s : sig) c = mix(c, s);
        next[b] = c;
    }
    side.color = std::move(next);
}

std::size_t distinct(const Side& side) {
    std::set<Color> s;
    for (const auto& [b, c] : side.color) s.insert(c);
    return s.size();
}

std::multiset<Color> palette(const Side& side) {
    std::multiset<Color> s;
    for (const auto& [b, c] : side.color) s.insert(c);
    return s;
}

class Matcher {
public:
    Matcher(const Side& a, const Side& b) : a_(a), b_(b), b_triples_(b.with_blanks.begin(), b.with_blanks.end()) {
        for (const auto& x : b.blanks) by_color_[b.color.at(x)].push_back(x);
        order_ = a.blanks;
        std::sort(order_.begin(), order_.end(), [&](const std::string& x, const std::string& y) {
            auto cx = by_color_[a.color.at(x)].size();
            auto cy = by_color_[a.color.at(y)].size();
            return cx != cy ? cx < cy : x < y;
        });
    }

    bool run() { return assign(0); }

private:
    Term mapped(const Term& t) const {
        if (!t.is_blank()) return t;
        return Term::blank(mapping_.at(t.value()));
    }

    bool consistent(const std::string& blank) const {
        for (auto i : a_.incident.at(blank)) {
            const auto& t = a_.with_blanks[i];
            if (t.subject.is_blank() && !mapping_.count(t.subject.value())) continue;
            if (t.object.is_blank() && !mapping_.count(t.object.value())) continue;
            if (!b_triples_.count(Triple(mapped(t.subject), t.predicate, mapped(t.object)))) return false;
        }
        return true;
    }

    bool assign(std::size_t k) {
        if (k == order_.size()) return true;
        const auto& x = order_[k];
        auto it = by_color_.find(a_.color.at(x));
        if (it == by_color_.end()) return false;
        for (const auto& y : it->second) {
            if (used_.count(y)) continue;
            mapping_[x] = y;
            used_.insert(y);
            if (consistent(x) && assign(k + 1)) return true;
            used_.erase(y);
            mapping_.erase(x);
        }
        return false;
    }

    const Side& a_;
    const Side& b_;
    std::set<Triple> b_triples_;
    std::map<Color, std::vector<std::string>> by_color_;
    std::vector<std::string> order_;
    std::unordered_map<std::string, std::string> mapping_;
    std::set<std::string> used_;
};

}  // namespace

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.size() != b.size()) return false;
    Side sa = split(a);
    Side sb = split(b);
    if (sa.ground != sb.ground) return false;
    if (sa.blanks.size() != sb.blanks.size() || sa.with_blanks.size() != sb.with_blanks.size()) return false;
    if (sa.blanks.empty()) return true;

    std::size_t before = 0;
    for (std::size_t round = 0; round <= sa.blanks.size(); ++round) {
        refine(sa);
        refine(sb);
        std::size_t now = std::max(distinct(sa), distinct(sb));
        if (palette(sa) != palette(sb)) return false;
        if (now == before) break;
        before = now;
    }
    return Matcher(sa, sb).run();
}

}  // namespace kgcube::rdf
