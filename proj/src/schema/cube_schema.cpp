#include "kgcube/schema/cube_schema.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "kgcube/rdf/vocab.hpp"

namespace kgcube::schema {

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

template <class Map>
auto find_in(const Map& m, std::string_view key) -> const typename Map::mapped_type* {
    auto it = m.find(std::string(key));
    return it == m.end() ? nullptr : &it->second;
}

}  // namespace

std::string_view to_string(AggregateFunction f) {
    switch (f) {
        case AggregateFunction::Sum: return "SUM";
        case AggregateFunction::Avg: return "AVG";
        case AggregateFunction::Min: return "MIN";
        case AggregateFunction::Max: return "MAX";
        case AggregateFunction::Count: return "COUNT";
    }
    return "SUM";
}

AggregateFunction parse_aggregate(std::string_view name) {
    auto u = upper(name);
    if (u == "SUM") return AggregateFunction::Sum;
    if (u == "AVG") return AggregateFunction::Avg;
    if (u == "MIN") return AggregateFunction::Min;
    if (u == "MAX") return AggregateFunction::Max;
    if (u == "COUNT") return AggregateFunction::Count;
    throw SchemaError("unknown aggregate function: " + std::string(name));
}

std::string_view aggregate_iri(AggregateFunction f) {
    switch (f) {
        case AggregateFunction::Sum: return vocab::qb4o::sum;
        case AggregateFunction::Avg: return vocab::qb4o::avg;
        case AggregateFunction::Min: return vocab::qb4o::min;
        case AggregateFunction::Max: return vocab::qb4o::max;
        case AggregateFunction::Count: return vocab::qb4o::count;
    }
    return vocab::qb4o::sum;
}

std::optional<AggregateFunction> aggregate_from_iri(std::string_view iri) {
    for (auto f : {AggregateFunction::Sum, AggregateFunction::Avg, AggregateFunction::Min, AggregateFunction::Max,
                   AggregateFunction::Count}) {
        if (aggregate_iri(f) == iri) return f;
    }
    return std::nullopt;
}

std::string_view to_string(Cardinality c) {
    switch (c) {
        case Cardinality::OneToMany: return "one-to-many";
        case Cardinality::OneToOne: return "one-to-one";
        case Cardinality::ManyToMany: return "many-to-many";
    }
    return "one-to-many";
}

Cardinality parse_cardinality(std::string_view name) {
    if (name == "one-to-many") return Cardinality::OneToMany;
    if (name == "one-to-one") return Cardinality::OneToOne;
    if (name == "many-to-many") return Cardinality::ManyToMany;
    throw SchemaError("unknown cardinality: " + std::string(name));
}

std::string_view cardinality_iri(Cardinality c) {
    switch (c) {
        case Cardinality::OneToMany: return vocab::qb4o::one_to_many;
        case Cardinality::OneToOne: return vocab::qb4o::one_to_one;
        case Cardinality::ManyToMany: return vocab::qb4o::many_to_many;
    }
    return vocab::qb4o::one_to_many;
}

std::optional<Cardinality> cardinality_from_iri(std::string_view iri) {
    for (auto c : {Cardinality::OneToMany, Cardinality::OneToOne, Cardinality::ManyToMany}) {
        if (cardinality_iri(c) == iri) return c;
    }
    return std::nullopt;
}

bool is_numeric_datatype(std::string_view dt) {
    static const std::set<std::string, std::less<>> numeric = {
        "http://www.w3.org/2001/XMLSchema#integer",  "http://www.w3.org/2001/XMLSchema#decimal",
        "http://www.w3.org/2001/XMLSchema#float",    "http://www.w3.org/2001/XMLSchema#double",
        "http://www.w3.org/2001/XMLSchema#int",      "http://www.w3.org/2001/XMLSchema#long",
        "http://www.w3.org/2001/XMLSchema#short",    "http://www.w3.org/2001/XMLSchema#nonNegativeInteger",
        "http://www.w3.org/2001/XMLSchema#positiveInteger", "http://www.w3.org/2001/XMLSchema#unsignedInt",
    };
    return numeric.count(dt) != 0;
}

const LevelAttribute* Level::attribute(std::string_view attribute_iri) const {
    for (const auto& a : attributes) {
        if (a.iri == attribute_iri) return &a;
    }
    return nullptr;
}

bool Hierarchy::contains(std::string_view level) const {
    return std::find(levels.begin(), levels.end(), level) != levels.end();
}

const BaseLevel* CuboidStructure::base_for(std::string_view dimension) const {
    for (const auto& b : levels) {
        if (b.dimension == dimension) return &b;
    }
    return nullptr;
}

bool CuboidStructure::has_measure(std::string_view measure) const {
    return std::find(measures.begin(), measures.end(), measure) != measures.end();
}

const Level* CubeSchema::level(std::string_view iri) const { return find_in(levels, iri); }
const Dimension* CubeSchema::dimension(std::string_view iri) const { return find_in(dimensions, iri); }
const Hierarchy* CubeSchema::hierarchy(std::string_view iri) const { return find_in(hierarchies, iri); }
const Measure* CubeSchema::measure(std::string_view iri) const { return find_in(measures, iri); }
const CuboidStructure* CubeSchema::structure(std::string_view iri) const { return find_in(structures, iri); }
const CubeDataset* CubeSchema::dataset(std::string_view iri) const { return find_in(datasets, iri); }

std::vector<std::string> CubeSchema::dimensions_of(std::string_view level_iri) const {
    std::set<std::string> dims;
    for (const auto& [iri, h] : hierarchies) {
        if (h.contains(level_iri) && !h.dimension.empty()) dims.insert(h.dimension);
    }
    return {dims.begin(), dims.end()};
}

std::vector<std::string> CubeSchema::datasets_of(std::string_view structure_iri) const {
    std::vector<std::string> out;
    for (const auto& [iri, ds] : datasets) {
        if (ds.structure == structure_iri) out.push_back(iri);
    }
    return out;
}

bool CubeSchema::empty() const {
    return dimensions.empty() && hierarchies.empty() && levels.empty() && measures.empty() && structures.empty() &&
           datasets.empty();
}

void normalize(CubeSchema& schema) {
    for (auto& [iri, d] : schema.dimensions) {
        std::sort(d.hierarchies.begin(), d.hierarchies.end());
        d.hierarchies.erase(std::unique(d.hierarchies.begin(), d.hierarchies.end()), d.hierarchies.end());
    }
    for (auto& [iri, l] : schema.levels) {
        std::sort(l.attributes.begin(), l.attributes.end(),
                  [](const LevelAttribute& a, const LevelAttribute& b) { return a.iri < b.iri; });
    }
    for (auto& [iri, s] : schema.structures) {
        std::sort(s.levels.begin(), s.levels.end(), [](const BaseLevel& a, const BaseLevel& b) {
            return a.dimension != b.dimension ? a.dimension < b.dimension : a.level < b.level;
        });
        std::sort(s.measures.begin(), s.measures.end());
    }
    // Hierarchy levels follow the step chain: start at the level that is never
    // a parent and walk child -> parent. Left untouched when the steps do not
    // form a simple chain (validation reports that).
    for (auto& [iri, h] : schema.hierarchies) {
        std::set<std::string> parents;
        std::map<std::string, const HierarchyStep*> up;
        bool simple = true;
        for (const auto& s : h.steps) {
            parents.insert(s.parent);
            if (!up.emplace(s.child, &s).second) simple = false;
        }
        std::vector<std::string> roots;
        for (const auto& l : h.levels) {
            if (!parents.count(l)) roots.push_back(l);
        }
        if (!simple || roots.size() != 1) {
            std::sort(h.levels.begin(), h.levels.end());
            continue;
        }
        std::vector<std::string> chain{roots.front()};
        std::vector<HierarchyStep> steps;
        std::set<std::string> seen{roots.front()};
        while (true) {
            auto it = up.find(chain.back());
            if (it == up.end()) break;
            if (!seen.insert(it->second->parent).second) {
                simple = false;
                break;
            }
            steps.push_back(*it->second);
            chain.push_back(it->second->parent);
        }
        std::set<std::string> members(h.levels.begin(), h.levels.end());
        if (simple && steps.size() == h.steps.size() && std::set<std::string>(chain.begin(), chain.end()) == members) {
            h.levels = std::move(chain);
            h.steps = std::move(steps);
        } else {
            std::sort(h.levels.begin(), h.levels.end());
        }
    }
}

ValidationReport validate_tbox(const CubeSchema& s) {
    ValidationReport report;
    auto add = [&](const std::string& subject, std::string message) { report.push_back({subject, std::move(message)}); };

    // dimension <-> hierarchy
    std::map<std::string, int> listed_by;
    for (const auto& [iri, d] : s.dimensions) {
        if (d.hierarchies.empty()) add(iri, "dimension has no hierarchy");
        for (const auto& h : d.hierarchies) {
            const Hierarchy* hier = s.hierarchy(h);
            if (!hier) {
                add(iri, "dimension lists undeclared hierarchy " + h);
                continue;
            }
            ++listed_by[h];
            if (hier->dimension != iri) add(h, "hierarchy does not declare dimension " + iri + " back");
        }
    }
    for (const auto& [iri, h] : s.hierarchies) {
        if (h.dimension.empty()) {
            add(iri, "hierarchy has no dimension");
        } else if (!s.dimension(h.dimension)) {
            add(iri, "hierarchy names undeclared dimension " + h.dimension);
        }
        if (listed_by[iri] != 1) add(iri, "hierarchy must be reachable from exactly one dimension");
        if (h.levels.empty()) add(iri, "hierarchy has no levels");
        for (const auto& l : h.levels) {
            if (!s.level(l)) add(iri, "hierarchy lists undeclared level " + l);
        }

        std::map<std::string, std::string> up;
        for (const auto& st : h.steps) {
            if (!h.contains(st.child)) add(iri, "step child " + st.child + " is not a level of the hierarchy");
            if (!h.contains(st.parent)) add(iri, "step parent " + st.parent + " is not a level of the hierarchy");
            if (st.child == st.parent) add(iri, "step connects " + st.child + " to itself");
            if (!up.emplace(st.child, st.parent).second) add(iri, "level " + st.child + " has more than one parent step");
            const Level* child = s.level(st.child);
            const LevelAttribute* attr = child ? child->attribute(st.rollup) : nullptr;
            if (!attr) {
                add(iri, "roll-up property " + st.rollup + " is not an attribute of " + st.child);
            } else if (attr->kind != AttributeKind::Object) {
                add(iri, "roll-up property " + st.rollup + " is datatype-valued");
            } else if (attr->range != st.parent) {
                add(iri, "roll-up property " + st.rollup + " does not range over " + st.parent);
            }
        }
        // acyclic
        for (const auto& [start, next] : up) {
            std::set<std::string> seen{start};
            std::string cur = next;
            while (true) {
                if (!seen.insert(cur).second) {
                    add(iri, "hierarchy steps contain a cycle through " + start);
                    break;
                }
                auto it = up.find(cur);
                if (it == up.end()) break;
                cur = it->second;
            }
        }
        // chain covering consecutive level pairs
        if (h.steps.size() + 1 != h.levels.size()) {
            add(iri, "steps do not form a chain over the hierarchy's levels");
        } else {
            for (std::size_t i = 0; i < h.steps.size(); ++i) {
                if (h.steps[i].child != h.levels[i] || h.steps[i].parent != h.levels[i + 1]) {
                    add(iri, "steps do not form a chain over the hierarchy's levels");
                    break;
                }
            }
        }
    }

    std::map<std::string, const LevelAttribute*> shared;
    for (const auto& [iri, l] : s.levels) {
        if (l.identifier.empty()) {
            add(iri, "level has no identifier");
        } else if (!l.attribute(l.identifier)) {
            add(iri, "identifier " + l.identifier + " is not an attribute of the level");
        }
        std::set<std::string> names;
        for (const auto& a : l.attributes) {
            if (!names.insert(a.iri).second) add(iri, "duplicate attribute " + a.iri);
            if (a.kind == AttributeKind::Object && !s.level(a.range)) {
                add(a.iri, "object-valued attribute ranges over undeclared level " + a.range);
            }
            if (a.kind == AttributeKind::Datatype && a.range.empty()) add(a.iri, "datatype attribute has no range");
            auto [it, fresh] = shared.emplace(a.iri, &a);
            if (!fresh && !(*it->second == a)) add(a.iri, "attribute shared by several levels with different ranges");
        }
        if (l.identifier.size() && l.attribute(l.identifier) && l.attribute(l.identifier)->kind != AttributeKind::Datatype) {
            add(iri, "identifier must be datatype-valued");
        }
    }

    for (const auto& [iri, m] : s.measures) {
        if (!is_numeric_datatype(m.datatype)) add(iri, "measure datatype " + m.datatype + " is not numeric");
    }

    for (const auto& [iri, st] : s.structures) {
        if (st.measures.empty()) add(iri, "cuboid structure has no measure");
        for (const auto& m : st.measures) {
            if (!s.measure(m)) add(iri, "cuboid structure uses undeclared measure " + m);
        }
        std::set<std::string> dims;
        for (const auto& b : st.levels) {
            if (!s.level(b.level)) {
                add(iri, "cuboid structure uses undeclared level " + b.level);
                continue;
            }
            auto owners = s.dimensions_of(b.level);
            if (owners.size() != 1) {
                add(iri, "base level " + b.level + " must belong to exactly one dimension");
            } else if (owners.front() != b.dimension) {
                add(iri, "base level " + b.level + " does not belong to dimension " + b.dimension);
            }
            if (!dims.insert(b.dimension).second) add(iri, "two base levels in dimension " + b.dimension);
        }
    }
    for (const auto& [iri, ds] : s.datasets) {
        if (!s.structure(ds.structure)) add(iri, "dataset structure " + ds.structure + " is not declared");
    }
    return report;
}

std::vector<HierarchyStep> rollup_path(const CubeSchema& schema, std::string_view from, std::string_view to,
                                       std::optional<std::string_view> hierarchy) {
    if (!schema.level(from)) throw SchemaError("undeclared level " + std::string(from), {std::string(from)});
    if (!schema.level(to)) throw SchemaError("undeclared level " + std::string(to), {std::string(to)});
    if (from == to) return {};

    std::vector<std::pair<std::string, std::vector<HierarchyStep>>> found;
    for (const auto& [iri, h] : schema.hierarchies) {
        if (hierarchy && iri != *hierarchy) continue;
        auto a = std::find(h.levels.begin(), h.levels.end(), from);
        auto b = std::find(h.levels.begin(), h.levels.end(), to);
        if (a == h.levels.end() || b == h.levels.end() || b <= a) continue;
        auto i = static_cast<std::size_t>(a - h.levels.begin());
        auto j = static_cast<std::size_t>(b - h.levels.begin());
        if (j > h.steps.size()) continue;
        std::vector<HierarchyStep> chain(h.steps.begin() + static_cast<long>(i), h.steps.begin() + static_cast<long>(j));
        found.emplace_back(iri, std::move(chain));
    }
    if (found.empty()) throw PathNotFoundError(std::string(from), std::string(to));
    for (const auto& f : found) {
        if (f.second != found.front().second) {
            std::vector<std::string> names;
            for (const auto& g : found) names.push_back(g.first);
            throw AmbiguousPathError(std::string(from), std::string(to), std::move(names));
        }
    }
    return found.front().second;
}

bool reachable(const CubeSchema& schema, std::string_view from, std::string_view to) {
    try {
        rollup_path(schema, from, to);
        return true;
    } catch (const AmbiguousPathError&) {
        return true;
    } catch (const SchemaError&) {
        return false;
    }
}

}  // namespace kgcube::schema
