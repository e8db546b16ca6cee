#include "kgcube/mapping/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

namespace kgcube::mapping {

bool parse_number(std::string_view text, double& out) {
    if (text.empty()) return false;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::string format_number(double d) {
    if (d == 0) return "0";
    if (std::nearbyint(d) == d && std::fabs(d) < 1e15) return std::to_string(static_cast<long long>(d));
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, ptr);
}

std::string Value::str() const {
    switch (kind_) {
        case Kind::Text: return text_;
        case Kind::Number: return format_number(number_);
        case Kind::Boolean: return bool_ ? "true" : "false";
    }
    return text_;
}

double Value::as_number() const {
    if (kind_ == Kind::Number) return number_;
    double d = 0;
    if (kind_ == Kind::Text && parse_number(text_, d)) return d;
    throw ExpressionError("not a number: '" + str() + "'");
}

bool Value::as_bool() const {
    if (kind_ != Kind::Boolean) throw ExpressionError("expected a boolean, got '" + str() + "'");
    return bool_;
}

enum class Op { Column, Constant, Concat, Substitute, Add, Sub, Mul, Div, Neg, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Not, Contains };

struct ExprNode {
    Op op;
    std::string name;  // column name
    Value constant = Value::boolean(true);
    std::vector<std::shared_ptr<const ExprNode>> args;
    std::map<std::string, std::string> table;  // substitute lookup
    bool has_default = false;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make(Op op, std::vector<NodePtr> args = {}) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->args = std::move(args);
    return n;
}

NodePtr make_constant(Value v) {
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Constant;
    n->constant = std::move(v);
    return n;
}

NodePtr make_column(std::string name) {
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Column;
    n->name = std::move(name);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    NodePtr run() {
        auto e = disjunction();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ExpressionError("expression '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + msg);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(std::string_view tok) {
        skip();
        if (s_.substr(pos_, tok.size()) != tok) return false;
        pos_ += tok.size();
        return true;
    }

    bool accept_word(std::string_view word) {
        skip();
        if (s_.substr(pos_, word.size()) != word) return false;
        std::size_t end = pos_ + word.size();
        if (end < s_.size() && ident_char(s_[end])) return false;
        pos_ = end;
        return true;
    }

    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    NodePtr disjunction() {
        auto l = conjunction();
        while (accept("||") || accept_word("or")) l = make(Op::Or, {l, conjunction()});
        return l;
    }

    NodePtr conjunction() {
        auto l = negation();
        while (accept("&&") || accept_word("and")) l = make(Op::And, {l, negation()});
        return l;
    }

    NodePtr negation() {
        skip();
        if (accept_word("not")) return make(Op::Not, {negation()});
        if (pos_ < s_.size() && s_[pos_] == '!' && s_.substr(pos_, 2) != "!=") {
            ++pos_;
            return make(Op::Not, {negation()});
        }
        return comparison();
    }

    NodePtr comparison() {
        auto l = additive();
        static const std::pair<std::string_view, Op> ops[] = {{"<=", Op::Le}, {">=", Op::Ge}, {"!=", Op::Ne},
                                                              {"=", Op::Eq},  {"<", Op::Lt},  {">", Op::Gt}};
        for (const auto& [tok, op] : ops) {
            if (accept(tok)) {
                if (tok == "=") accept("=");  // tolerate ==
                return make(op, {l, additive()});
            }
        }
        return l;
    }

    NodePtr additive() {
        auto l = multiplicative();
        while (true) {
            if (accept("+")) {
                l = make(Op::Add, {l, multiplicative()});
            } else if (accept("-")) {
                l = make(Op::Sub, {l, multiplicative()});
            } else {
                return l;
            }
        }
    }

    NodePtr multiplicative() {
        auto l = unary();
        while (true) {
            if (accept("*")) {
                l = make(Op::Mul, {l, unary()});
            } else if (accept("/")) {
                l = make(Op::Div, {l, unary()});
            } else {
                return l;
            }
        }
    }

    NodePtr unary() {
        if (accept("-")) return make(Op::Neg, {unary()});
        return primary();
    }

    std::string string_literal() {
        skip();
        char q = s_[pos_++];
        std::string out;
        while (true) {
            if (pos_ >= s_.size()) fail("unterminated string");
            char c = s_[pos_++];
            if (c == q) break;
            if (c == '\\') {
                if (pos_ >= s_.size()) fail("unterminated string");
                char e = s_[pos_++];
                switch (e) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    default: out += e;
                }
                continue;
            }
            out += c;
        }
        return out;
    }

    bool at_string() {
        skip();
        return pos_ < s_.size() && (s_[pos_] == '"' || s_[pos_] == '\'');
    }

    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (accept("(")) {
            auto e = disjunction();
            expect(")");
            return e;
        }
        if (c == '"' || c == '\'') return make_constant(Value::text(string_literal()));
        if (c == '`') {
            ++pos_;
            auto end = s_.find('`', pos_);
            if (end == std::string_view::npos) fail("unterminated quoted column name");
            std::string name(s_.substr(pos_, end - pos_));
            pos_ = end + 1;
            if (name.empty()) fail("empty column name");
            return make_column(std::move(name));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
            double d = 0;
            if (!parse_number(s_.substr(start, pos_ - start), d)) fail("malformed number");
            return make_constant(Value::number(d));
        }
        if (!ident_start(c)) fail("unexpected '" + std::string(1, c) + "'");
        std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        std::string word(s_.substr(start, pos_ - start));
        if (word == "true" || word == "false") return make_constant(Value::boolean(word == "true"));
        skip();
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            return call(word);
        }
        return make_column(std::move(word));
    }

    std::vector<NodePtr> arguments() {
        std::vector<NodePtr> args;
        if (accept(")")) return args;
        do {
            args.push_back(disjunction());
        } while (accept(","));
        expect(")");
        return args;
    }

    NodePtr call(const std::string& fn) {
        if (fn == "concat") return make(Op::Concat, arguments());
        if (fn == "contains") {
            auto args = arguments();
            if (args.size() != 2) fail("contains() takes 2 arguments");
            return make(Op::Contains, std::move(args));
        }
        if (fn == "substitute") {
            auto n = std::make_shared<ExprNode>();
            n->op = Op::Substitute;
            n->args.push_back(disjunction());
            expect(",");
            expect("{");
            if (!accept("}")) {
                do {
                    if (!at_string()) fail("substitute() keys must be strings");
                    std::string k = string_literal();
                    expect(":");
                    if (!at_string()) fail("substitute() values must be strings");
                    std::string v = string_literal();
                    n->table[k] = v;
                } while (accept(","));
                expect("}");
            }
            if (accept(",")) {
                n->args.push_back(disjunction());
                n->has_default = true;
            }
            expect(")");
            return n;
        }
        fail("unknown function " + fn + "()");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

int compare(const Value& a, const Value& b) {
    double x = 0, y = 0;
    bool nx = a.kind() == Value::Kind::Number || (a.kind() == Value::Kind::Text && parse_number(a.str(), x));
    bool ny = b.kind() == Value::Kind::Number || (b.kind() == Value::Kind::Text && parse_number(b.str(), y));
    if (nx && ny) {
        x = a.as_number();
        y = b.as_number();
        return x < y ? -1 : (x > y ? 1 : 0);
    }
    auto sa = a.str();
    auto sb = b.str();
    return sa < sb ? -1 : (sa > sb ? 1 : 0);
}

Value eval(const ExprNode& n, const RowView& row) {
    switch (n.op) {
        case Op::Column: {
            const std::string* cell = row.get(n.name);
            if (!cell) throw ExpressionError("missing column '" + n.name + "'");
            return Value::text(*cell);
        }
        case Op::Constant: return n.constant;
        case Op::Concat: {
            std::string out;
            for (const auto& a : n.args) out += eval(*a, row).str();
            return Value::text(std::move(out));
        }
        case Op::Substitute: {
            auto key = eval(*n.args[0], row).str();
            auto it = n.table.find(key);
            if (it != n.table.end()) return Value::text(it->second);
            if (n.has_default) return eval(*n.args[1], row);
            throw ExpressionError("substitute(): no entry for '" + key + "' and no default");
        }
        case Op::Add: return Value::number(eval(*n.args[0], row).as_number() + eval(*n.args[1], row).as_number());
        case Op::Sub: return Value::number(eval(*n.args[0], row).as_number() - eval(*n.args[1], row).as_number());
        case Op::Mul: return Value::number(eval(*n.args[0], row).as_number() * eval(*n.args[1], row).as_number());
        case Op::Div: {
            double num = eval(*n.args[0], row).as_number();
            double den = eval(*n.args[1], row).as_number();
            if (den == 0) throw ExpressionError("division by zero");
            return Value::number(num / den);
        }
        case Op::Neg: return Value::number(-eval(*n.args[0], row).as_number());
        case Op::Eq: return Value::boolean(compare(eval(*n.args[0], row), eval(*n.args[1], row)) == 0);
        case Op::Ne: return Value::boolean(compare(eval(*n.args[0], row), eval(*n.args[1], row)) != 0);
        case Op::Lt: return Value::boolean(compare(eval(*n.args[0], row), eval(*n.args[1], row)) < 0);
        case Op::Le: return Value::boolean(compare(eval(*n.args[0], row), eval(*n.args[1], row)) <= 0);
        case Op::Gt: return Value::boolean(compare(eval(*n.args[0], row), eval(*n.args[1], row)) > 0);
        case Op::Ge: return Value::boolean(compare(eval(*n.args[0], row), eval(*n.args[1], row)) >= 0);
        case Op::And: return Value::boolean(eval(*n.args[0], row).as_bool() && eval(*n.args[1], row).as_bool());
        case Op::Or: return Value::boolean(eval(*n.args[0], row).as_bool() || eval(*n.args[1], row).as_bool());
        case Op::Not: return Value::boolean(!eval(*n.args[0], row).as_bool());
        case Op::Contains:
            return Value::boolean(eval(*n.args[0], row).str().find(eval(*n.args[1], row).str()) != std::string::npos);
    }
    throw ExpressionError("unreachable expression node");
}

void collect(const ExprNode& n, std::set<std::string>& out) {
    if (n.op == Op::Column) out.insert(n.name);
    for (const auto& a : n.args) collect(*a, out);
}

}  // namespace

Expression::Expression() : root_(make_constant(Value::boolean(true))), source_("true") {}

Expression Expression::parse(std::string_view text) {
    Expression e;
    e.root_ = Parser(text).run();
    e.source_ = std::string(text);
    return e;
}

Expression Expression::column(std::string name) {
    Expression e;
    e.source_ = name;
    e.root_ = make_column(std::move(name));
    return e;
}

Value Expression::evaluate(const RowView& row) const { return eval(*root_, row); }

bool Expression::test(const RowView& row) const { return evaluate(row).as_bool(); }

std::vector<std::string> Expression::columns() const {
    std::set<std::string> out;
    collect(*root_, out);
    return {out.begin(), out.end()};
}

bool Expression::is_column() const { return root_->op == Op::Column; }

}  // namespace kgcube::mapping
