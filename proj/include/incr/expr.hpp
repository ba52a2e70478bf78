#pragma once

#include <memory>
#include <string>
#include <vector>

#include "incr/fn1d.hpp"
#include "incr/numeric.hpp"

namespace incr {

enum class ExprKind {
    Number,   // exact rational literal
    Variable, // x
    Pi,
    Add,
    Sub,
    Neg,
    Mul,
    Div,
    Pow, // integer exponent stored on the node, not as a child
    Sin,
    Cos,
    Abs,
};

/**
 * Immutable expression tree over the grammar
 *
 *   {rational constants, x, pi, + - (unary -) * / ^, sin, cos, abs}
 *
 * with precedence ^ > unary- > * / > + -, left-associative binary
 * + - * /, right-associative ^, and integer-literal exponents only.
 * Nodes are shared and never mutated after construction.
 */
class Expr {
public:
    static Expr number(Rat value);
    static Expr variable();
    static Expr pi();
    static Expr add(Expr l, Expr r);
    static Expr sub(Expr l, Expr r);
    static Expr neg(Expr e);
    static Expr mul(Expr l, Expr r);
    static Expr div(Expr l, Expr r);
    static Expr pow(Expr base, long exponent);
    static Expr sin(Expr e);
    static Expr cos(Expr e);
    static Expr abs(Expr e);

    ExprKind kind() const { return node_->kind; }
    const Rat& value() const { return node_->value; }      // Number only
    long exponent() const { return node_->exponent; }      // Pow only
    const Expr& child(std::size_t i) const { return node_->kids[i]; }
    std::size_t child_count() const { return node_->kids.size(); }

    bool operator==(const Expr& other) const; // structural equality

private:
    struct Node {
        ExprKind kind;
        Rat value;
        long exponent = 0;
        std::vector<Expr> kids;
    };
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Recursive-descent parser. Whitespace-insensitive. SyntaxError carries the
/// byte offset of the offending token; UnknownIdentifier likewise. Literal
/// arithmetic (Number op Number) is folded at parse time; nothing else is
/// simplified.
Expr parse(std::string_view text);

/// Prints with minimal parentheses; parse(print(e)) is structurally equal
/// to e for every tree the parser or differentiate can produce.
std::string print(const Expr& e);

/// Symbolic derivative. Product/quotient/chain rules; d(u^n) = n*u^(n-1)*u'.
/// Throws DifferentiateAbs when abs occurs anywhere in the tree. The result
/// folds literal arithmetic but is otherwise unsimplified.
Expr differentiate(const Expr& e);

/// Interpreting evaluators. Division by zero (and 0^negative) raise
/// DomainViolation; the exact form also raises MissingExactOracle on
/// sin/cos/pi, which have no rational values.
double eval_f64(const Expr& e, double x);
Rat eval_exact(const Expr& e, const Rat& x);

/// True when the tree contains no sin/cos/pi (abs is rational-closed).
bool is_rational_closed(const Expr& e);

/// Wraps the expression as a Fn1D on the given domain: eval interprets the
/// tree, deriv interprets differentiate(e) (absent when abs occurs), exact
/// oracles attach when the tree is rational-closed.
Fn1D to_fn(const Expr& e, Interval domain);

} // namespace incr
