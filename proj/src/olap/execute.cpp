#include "kgcube/olap/execute.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>

#include "kgcube/mapping/expression.hpp"

namespace kgcube::olap {

namespace {

using rdf::Graph;
using TermId = Graph::TermId;

constexpr std::size_t max_diagnostics = 20;

struct IdSlot {
    bool is_var = false;
    std::size_t var = 0;
    TermId id = 0;
};

struct IdPattern {
    std::array<IdSlot, 3> slots;
};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool compare_numbers(double a, Comparator op, double b) {
    switch (op) {
        case Comparator::Eq: return a == b;
        case Comparator::Ne: return a != b;
        case Comparator::Lt: return a < b;
        case Comparator::Le: return a <= b;
        case Comparator::Gt: return a > b;
        case Comparator::Ge: return a >= b;
        case Comparator::Regex: return false;
    }
    return false;
}

struct Accumulator {
    double sum = 0;
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    std::size_t count = 0;

    void add(double v) {
        sum += v;
        min = std::min(min, v);
        max = std::max(max, v);
        ++count;
    }

    double result(AggregateFunction f) const {
        switch (f) {
            case AggregateFunction::Sum: return sum;
            case AggregateFunction::Avg: return sum / static_cast<double>(count);
            case AggregateFunction::Min: return min;
            case AggregateFunction::Max: return max;
            case AggregateFunction::Count: return static_cast<double>(count);
        }
        return sum;
    }
};

class Executor {
public:
    Executor(const AlgebraPlan& plan, const Graph& graph) : plan_(plan), graph_(graph) {}

    ResultTable run() {
        for (const auto& k : plan_.keys) table_.columns.push_back({k.column, ColumnKind::Key});
        for (const auto& a : plan_.aggregates) table_.columns.push_back({a.column, ColumnKind::Aggregate});
        if (!lower_patterns()) return std::move(table_);

        for (const auto& k : plan_.keys) key_vars_.push_back(var_index(k.column));
        for (const auto& m : plan_.measures) measure_vars_.push_back(var_index(m.var));
        for (const auto& a : plan_.aggregates) {
            for (std::size_t i = 0; i < plan_.measures.size(); ++i) {
                if (plan_.measures[i].var == a.var) agg_measure_.push_back(i);
            }
        }
        obs_var_ = var_index("o");

        binding_.assign(vars_.size(), std::nullopt);
        join(0);
        emit_rows();
        sort_rows();
        return std::move(table_);
    }

private:
    std::size_t var_index(const std::string& name) {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it != vars_.end()) return static_cast<std::size_t>(it - vars_.begin());
        vars_.push_back(name);
        return vars_.size() - 1;
    }

    // False when some constant of the pattern does not occur in the graph.
    bool lower_patterns() {
        for (const auto& p : plan_.patterns()) {
            IdPattern ip;
            const Slot* slots[3] = {&p.subject, &p.predicate, &p.object};
            for (int i = 0; i < 3; ++i) {
                if (slots[i]->is_var) {
                    ip.slots[i] = {true, var_index(slots[i]->text), 0};
                } else {
                    auto id = graph_.lookup(rdf::Term::iri(slots[i]->text));
                    if (!id) return false;
                    ip.slots[i] = {false, 0, *id};
                }
            }
            patterns_.push_back(ip);
        }
        return true;
    }

    void join(std::size_t depth) {
        if (depth == patterns_.size()) {
            solution();
            return;
        }
        const auto& p = patterns_[depth];
        std::array<std::optional<TermId>, 3> bound;
        for (int i = 0; i < 3; ++i) {
            bound[i] = p.slots[i].is_var ? binding_[p.slots[i].var] : std::optional<TermId>(p.slots[i].id);
        }
        std::vector<Graph::Key> hits;
        graph_.scan(bound[0], bound[1], bound[2], [&](const Graph::Key& k) { hits.push_back(k); });
        for (const auto& k : hits) {
            std::vector<std::size_t> newly;
            bool ok = true;
            for (int i = 0; i < 3 && ok; ++i) {
                if (!p.slots[i].is_var) continue;
                auto& b = binding_[p.slots[i].var];
                if (b) {
                    ok = *b == k[i];
                } else {
                    b = k[i];
                    newly.push_back(p.slots[i].var);
                }
            }
            if (ok) join(depth + 1);
            for (auto v : newly) binding_[v].reset();
        }
    }

    const rdf::Term& bound_term(std::size_t var) const { return graph_.term(*binding_[var]); }

    std::optional<std::size_t> var_lookup(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - vars_.begin());
    }

    bool test(const BoundFilter& f, const std::vector<double>& measures) const {
        switch (f.kind) {
            case Filter::Kind::And:
                for (const auto& c : f.children) {
                    if (!test(c, measures)) return false;
                }
                return true;
            case Filter::Kind::Or:
                for (const auto& c : f.children) {
                    if (test(c, measures)) return true;
                }
                return false;
            case Filter::Kind::Measure: {
                double rhs;
                if (!mapping::parse_number(f.value, rhs)) return false;
                for (std::size_t i = 0; i < plan_.measures.size(); ++i) {
                    if (plan_.measures[i].var == f.var) return compare_numbers(measures[i], f.op, rhs);
                }
                return false;
            }
            case Filter::Kind::Attribute: {
                auto v = var_lookup(f.var);
                if (!v || !binding_[*v]) return false;
                const std::string& text = bound_term(*v).value();
                if (f.op == Comparator::Regex) return lower(text).find(lower(f.value)) != std::string::npos;
                if (f.numeric) {
                    double a, b;
                    if (!mapping::parse_number(text, a) || !mapping::parse_number(f.value, b)) return false;
                    return compare_numbers(a, f.op, b);
                }
                if (f.op == Comparator::Eq) return text == f.value;
                if (f.op == Comparator::Ne) return text != f.value;
                return false;
            }
        }
        return false;
    }

    void solution() {
        std::vector<double> measures(measure_vars_.size());
        for (std::size_t i = 0; i < measure_vars_.size(); ++i) {
            const auto& t = bound_term(measure_vars_[i]);
            if (!t.is_literal() || !mapping::parse_number(t.value(), measures[i])) {
                ++table_.excluded;
                if (table_.diagnostics.size() < max_diagnostics) {
                    table_.diagnostics.push_back(bound_term(obs_var_).value() + ": measure " + plan_.measures[i].measure +
                                                 " value '" + t.value() + "' is not numeric");
                }
                return;
            }
        }
        if (plan_.filter && !test(*plan_.filter, measures)) return;
        std::vector<std::string> key;
        for (auto v : key_vars_) key.push_back(bound_term(v).value());
        auto& accs = groups_[key];
        if (accs.empty()) accs.resize(plan_.aggregates.size());
        for (std::size_t i = 0; i < plan_.aggregates.size(); ++i) accs[i].add(measures[agg_measure_[i]]);
    }

    void emit_rows() {
        for (const auto& [key, accs] : groups_) {
            std::vector<Cell> row;
            for (const auto& k : key) row.emplace_back(k);
            for (std::size_t i = 0; i < accs.size(); ++i) row.emplace_back(accs[i].result(plan_.aggregates[i].function));
            table_.rows.push_back(std::move(row));
        }
    }

    void sort_rows() {
        std::vector<std::pair<std::size_t, bool>> order;
        for (const auto& name : plan_.order_by) {
            auto i = table_.column_index(name);
            if (!i) continue;
            bool numeric = table_.columns[*i].kind == ColumnKind::Aggregate || plan_.keys[*i].numeric;
            order.emplace_back(*i, numeric);
        }
        std::stable_sort(table_.rows.begin(), table_.rows.end(), [&](const auto& a, const auto& b) {
            for (const auto& [i, numeric] : order) {
                int c = compare_cells(a[i], b[i], numeric);
                if (c != 0) return c < 0;
            }
            return false;
        });
    }

    const AlgebraPlan& plan_;
    const Graph& graph_;
    ResultTable table_;
    std::vector<std::string> vars_;
    std::vector<IdPattern> patterns_;
    std::vector<std::optional<TermId>> binding_;
    std::vector<std::size_t> key_vars_;
    std::vector<std::size_t> measure_vars_;
    std::vector<std::size_t> agg_measure_;
    std::size_t obs_var_ = 0;
    std::map<std::vector<std::string>, std::vector<Accumulator>> groups_;
};

}  // namespace

int compare_cells(const Cell& a, const Cell& b, bool numeric) {
    // nulls sort first
    bool an = std::holds_alternative<std::monostate>(a), bn = std::holds_alternative<std::monostate>(b);
    if (an || bn) return an == bn ? 0 : (an ? -1 : 1);
    if (numeric) {
        double x, y;
        bool xa = std::holds_alternative<double>(a) ? (x = std::get<double>(a), true) : mapping::parse_number(std::get<std::string>(a), x);
        bool ya = std::holds_alternative<double>(b) ? (y = std::get<double>(b), true) : mapping::parse_number(std::get<std::string>(b), y);
        if (xa && ya) return x < y ? -1 : (y < x ? 1 : 0);
        if (xa != ya) return xa ? -1 : 1;
    }
    auto s = cell_text(a), t = cell_text(b);
    return s < t ? -1 : (t < s ? 1 : 0);
}

ResultTable execute(const AlgebraPlan& plan, const rdf::Graph& graph) { return Executor(plan, graph).run(); }

ResultTable run_query(const OlapQuery& q, const schema::CubeSchema& schema, const rdf::Graph& graph) {
    return execute(compile(q, schema), graph);
}

}  // namespace kgcube::olap
