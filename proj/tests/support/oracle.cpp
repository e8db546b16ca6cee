#include "support/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "kgcube/rdf/term.hpp"

namespace kgcube::testing {

using namespace olap;

namespace {

struct LevelInfo {
    std::string dimension;
    std::string name;
    std::string rollup;                   // attribute holding the parent key; empty at the top
    std::vector<std::string> attributes;  // datatype attributes
};

// Chains of the production cuboid, base level first.
const std::vector<std::vector<LevelInfo>>& chains() {
    static const std::vector<std::vector<LevelInfo>> c = {
        {{"agriProductDim", "Product", "inCategory", {"productId", "productName"}},
         {"agriProductDim", "Category", "inSector", {"categoryId", "categoryName"}},
         {"agriProductDim", "Sector", "inAgriculture",
          {"sectorId", "sectorName", "sectorDescription", "sectorUnit", "sectorSource"}},
         {"agriProductDim", "Agriculture", "",
          {"agricultureId", "agricultureName", "agricultureDescription", "agricultureCountry", "agricultureSource",
           "agricultureLicense"}}},
        {{"agriGeographyDim", "District", "inDivision", {"districtId", "districtName"}},
         {"agriGeographyDim", "Division", "inAll", {"divisionId", "divisionName"}},
         {"agriGeographyDim", "All", "", {"allId", "allName", "allDescription"}}},
        {{"agriTimeDim", "Time", "", {"yearId", "yearName", "startYear"}}},
    };
    return c;
}

bool numeric(const OracleFixture& f, const std::string& level, const std::string& attribute) {
    const auto* l = f.schema.level(md + level);
    const auto* a = l ? l->attribute(attr + attribute) : nullptr;
    return a && a->kind == schema::AttributeKind::Datatype && schema::is_numeric_datatype(a->range);
}

std::string lower(std::string s) {
    for (auto& c : s) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return s;
}

bool compare(Comparator op, double a, double b) {
    switch (op) {
        case Comparator::Eq: return a == b;
        case Comparator::Ne: return a != b;
        case Comparator::Lt: return a < b;
        case Comparator::Le: return a <= b;
        case Comparator::Gt: return a > b;
        case Comparator::Ge: return a >= b;
        case Comparator::Regex: break;
    }
    return false;
}

std::string local(const std::string& iri) { return rdf::local_name(iri); }

std::optional<double> measure(const OracleFixture::Row& row, const std::string& iri) {
    return local(iri) == "area" ? row.area : row.production;
}

void collect_measures(const Filter& f, std::set<std::string>& out) {
    if (f.kind == Filter::Kind::Measure) out.insert(f.measure);
    for (const auto& c : f.children) collect_measures(c, out);
}

}  // namespace

std::string Oracle::member(const OracleFixture::Row& row, const std::string& level) const {
    for (const auto& chain : chains()) {
        const auto& base = chain[0].name;
        std::string key = base == "Product" ? row.product : base == "District" ? row.district : row.year;
        for (const auto& l : chain) {
            if (l.name == level) return key;
            if (l.rollup.empty()) break;
            key = f_.levels.at(l.name).at(key).at(l.rollup);
        }
    }
    throw std::logic_error("oracle: no level " + level);
}

std::string Oracle::value(const OracleFixture::Row& row, const std::string& level, const std::string& attribute) const {
    return f_.levels.at(level).at(member(row, level)).at(attribute);
}

bool Oracle::test(const Filter& f, const OracleFixture::Row& row) const {
    switch (f.kind) {
        case Filter::Kind::And:
            return std::all_of(f.children.begin(), f.children.end(), [&](const Filter& c) { return test(c, row); });
        case Filter::Kind::Or:
            return std::any_of(f.children.begin(), f.children.end(), [&](const Filter& c) { return test(c, row); });
        case Filter::Kind::Measure:
            return compare(f.op, *measure(row, f.measure), std::stod(f.value));
        case Filter::Kind::Attribute: {
            auto level = local(f.level), attribute = local(f.attribute);
            auto v = value(row, level, attribute);
            if (f.op == Comparator::Regex) return lower(v).find(lower(f.value)) != std::string::npos;
            if (numeric(f_, level, attribute)) return compare(f.op, std::stod(v), std::stod(f.value));
            return f.op == Comparator::Eq ? v == f.value : v != f.value;
        }
    }
    return false;
}

std::map<std::vector<std::string>, std::vector<double>> Oracle::run(const OlapQuery& q) const {
    std::set<std::string> needed;
    for (const auto& a : q.aggregates) needed.insert(a.measure);
    if (q.filter) collect_measures(*q.filter, needed);
    std::map<std::vector<std::string>, std::vector<std::vector<double>>> groups;
    for (const auto& row : f_.rows) {
        if (std::any_of(needed.begin(), needed.end(), [&](const std::string& m) { return !measure(row, m); })) continue;
        if (q.filter && !test(*q.filter, row)) continue;
        std::vector<std::string> key;
        for (const auto& g : q.group_by) key.push_back(value(row, local(g.level), local(g.attribute)));
        auto& vals = groups[key];
        vals.resize(q.aggregates.size());
        for (std::size_t i = 0; i < q.aggregates.size(); ++i) vals[i].push_back(*measure(row, q.aggregates[i].measure));
    }
    std::map<std::vector<std::string>, std::vector<double>> out;
    for (const auto& [key, vals] : groups) {
        auto& agg = out[key];
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const auto& v = vals[i];
            double sum = 0;
            for (double x : v) sum += x;
            switch (q.aggregates[i].function) {
                case AggregateFunction::Sum: agg.push_back(sum); break;
                case AggregateFunction::Avg: agg.push_back(sum / static_cast<double>(v.size())); break;
                case AggregateFunction::Count: agg.push_back(static_cast<double>(v.size())); break;
                case AggregateFunction::Min: agg.push_back(*std::min_element(v.begin(), v.end())); break;
                case AggregateFunction::Max: agg.push_back(*std::max_element(v.begin(), v.end())); break;
            }
        }
    }
    return out;
}

bool QueryGenerator::coin(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

OlapQuery QueryGenerator::next() {
    OlapQuery q;
    q.dataset = data + "agricultureDataset";
    for (const auto& chain : chains()) {
        if (!coin(0.6)) continue;
        const auto& l = pick(chain);
        q.group_by.push_back({md + l.dimension, md + l.name, attr + pick(l.attributes)});
    }
    std::vector<Aggregate> all;
    for (const char* m : {"area", "production"}) {
        for (auto fn : {AggregateFunction::Sum, AggregateFunction::Avg, AggregateFunction::Count, AggregateFunction::Min,
                        AggregateFunction::Max}) {
            all.push_back({md + m, fn});
        }
    }
    std::shuffle(all.begin(), all.end(), rng_);
    q.aggregates.assign(all.begin(), all.begin() + static_cast<long>(1 + rng_() % 3));
    if (coin(0.8)) q.filter = tree(0);
    return q;
}

Filter QueryGenerator::tree(int depth) {
    if (depth < 2 && coin(0.4)) {
        std::vector<Filter> children;
        std::size_t n = 1 + rng_() % 3;
        for (std::size_t i = 0; i < n; ++i) children.push_back(tree(depth + 1));
        return coin(0.5) ? Filter::all(std::move(children)) : Filter::any(std::move(children));
    }
    if (coin(0.2)) {
        const auto& row = pick(f_.rows);
        bool area = coin(0.5);
        auto v = area ? row.area : row.production;
        auto op = pick(std::vector<Comparator>{Comparator::Lt, Comparator::Le, Comparator::Gt, Comparator::Ge});
        return Filter::measure_test(md + (area ? "area" : "production"), op, std::to_string(v.value_or(100.0)));
    }
    const auto& l = pick(pick(chains()));
    const auto& attribute = pick(l.attributes);
    const auto& members = f_.levels.at(l.name);
    auto it = members.begin();
    std::advance(it, static_cast<long>(rng_() % members.size()));
    std::string v = it->second.at(attribute);
    std::vector<Comparator> ops{Comparator::Eq, Comparator::Ne, Comparator::Regex};
    if (numeric(f_, l.name, attribute)) ops.insert(ops.end(), {Comparator::Lt, Comparator::Le, Comparator::Gt, Comparator::Ge});
    auto op = pick(ops);
    if (op == Comparator::Regex && v.size() > 3) {
        v = v.substr(rng_() % (v.size() - 2), 3);
        if (coin(0.5)) {
            for (auto& c : v) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        }
    }
    return Filter::attribute_test(md + l.name, attr + attribute, op, v);
}

std::string oracle_mismatch(const OlapQuery& q, const ResultTable& got,
                            const std::map<std::vector<std::string>, std::vector<double>>& expected, double avg_rel_tol) {
    if (got.rows.size() != expected.size()) {
        return "row count " + std::to_string(got.rows.size()) + " != oracle " + std::to_string(expected.size());
    }
    if (got.excluded != 0) return std::to_string(got.excluded) + " rows excluded";
    for (const auto& row : got.rows) {
        std::vector<std::string> key;
        for (std::size_t k = 0; k < q.group_by.size(); ++k) key.push_back(cell_text(row[k]));
        auto it = expected.find(key);
        if (it == expected.end()) return "group not in oracle result";
        for (std::size_t a = 0; a < q.aggregates.size(); ++a) {
            const auto* g = std::get_if<double>(&row[q.group_by.size() + a]);
            double e = it->second[a];
            if (!g) return "non-numeric aggregate cell";
            bool ok = q.aggregates[a].function == AggregateFunction::Avg ? std::abs(*g - e) <= avg_rel_tol * std::abs(e) : *g == e;
            if (!ok) return aggregate_column(q.aggregates[a]) + ": " + std::to_string(*g) + " != oracle " + std::to_string(e);
        }
    }
    return {};
}

}  // namespace kgcube::testing
