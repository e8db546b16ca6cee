#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "kgcube/mapping/csv.hpp"

namespace kgcube::mapping {

class Value {
public:
    enum class Kind { Text, Number, Boolean };

    static Value text(std::string s) { return Value(Kind::Text, std::move(s), 0, false); }
    static Value number(double d) { return Value(Kind::Number, {}, d, false); }
    static Value boolean(bool b) { return Value(Kind::Boolean, {}, 0, b); }

    Kind kind() const { return kind_; }
    // Text rendering; numbers print integral values without a fraction.
    std::string str() const;
    // Numeric reading of the value; throws ExpressionError for non-numeric text.
    double as_number() const;
    bool as_bool() const;

    bool operator==(const Value& o) const { return str() == o.str() && kind_ == o.kind_; }

private:
    Value(Kind k, std::string t, double d, bool b) : kind_(k), text_(std::move(t)), number_(d), bool_(b) {}

    Kind kind_;
    std::string text_;
    double number_;
    bool bool_;
};

// Strict full-string numeric parse ("12", "-3.5", "1e3"); no surrounding blanks.
bool parse_number(std::string_view text, double& out);
std::string format_number(double d);

struct ExprNode;

// Closed expression language over a source row:
//   column identifiers, "text" constants, numbers, + - * / (decimal),
//   concat(e, ...), substitute(e, {"key": "value", ...}[, default]),
//   comparisons = != < <= > >=, and/or/not (also && || !), contains(e, e),
//   true/false. Comparisons are numeric when both sides parse as numbers.
class Expression {
public:
    Expression();  // the constant `true`
    static Expression parse(std::string_view text);
    static Expression column(std::string name);

    Value evaluate(const RowView& row) const;
    // Evaluates as a predicate; non-boolean results are an error.
    bool test(const RowView& row) const;

    // Column names referenced anywhere in the tree, sorted and unique.
    std::vector<std::string> columns() const;
    const std::string& source() const { return source_; }
    // True for a bare column reference.
    bool is_column() const;

private:
    std::shared_ptr<const ExprNode> root_;
    std::string source_;
};

}  // namespace kgcube::mapping
