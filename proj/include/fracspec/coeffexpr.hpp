#pragma once

// Arithmetic expressions in one variable x, used for the coefficient functions
// k, b, c, f of a problem.
//
// Grammar (whitespace insignificant):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative, binds tighter than '-'
//   primary := number | 'x' | ident '(' args ')' | '(' expr ')'
//   args    := expr (';' expr)*
//
// Functions: sin cos exp log sqrt abs (one argument) and
// piecewise(x0; left; right), which is `left` for x < x0 and `right` for x >= x0.
// The breakpoint x0 must not depend on x; it is folded to a literal at parse time.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace fracspec {

namespace coeffexpr {
struct Node;
}

class Expr {
public:
    /// Throws ParseError (with byte offset) on malformed input.
    static Expr parse(std::string_view src);

    /// Throws EvalError naming the offending sub-expression.
    double eval(double x) const;
    double operator()(double x) const { return eval(x); }

    /// Sorted, distinct piecewise breakpoints lying strictly inside (0,1).
    std::vector<double> breakpoints() const;

    /// True when the expression does not reference x.
    bool is_constant() const;

    /// Canonical, fully parenthesized rendering; parse(to_string()) reproduces the tree.
    std::string to_string() const;

    const std::string& source() const noexcept { return source_; }

private:
    Expr(std::shared_ptr<const coeffexpr::Node> root, std::string source);

    std::shared_ptr<const coeffexpr::Node> root_;
    std::string source_;
};

}  // namespace fracspec
