#include "incr/expr.hpp"

#include <cctype>
#include <cmath>

#include "incr/error.hpp"

namespace incr {

namespace {

// Exact rational power for folding; caller guarantees base != 0 when k < 0.
Rat rat_ipow(const Rat& base, long k) {
    Rat acc(1), b = base;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1UL
                            : static_cast<unsigned long>(k);
    for (; e > 0; e >>= 1) {
        if (e & 1) acc *= b;
        b *= b;
    }
    return k < 0 ? Rat(Rat(1) / acc) : acc;
}

} // namespace

// --- construction ---------------------------------------------------------
// Literal arithmetic folds immediately; nothing else is simplified. A literal
// division by zero is kept as a tree so evaluation reports DomainViolation.

Expr Expr::number(Rat value) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Number;
    n->value = std::move(value);
    return Expr(std::move(n));
}

Expr Expr::variable() {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Variable;
    return Expr(std::move(n));
}

Expr Expr::pi() {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Pi;
    return Expr(std::move(n));
}

namespace {
bool is_number(const Expr& e) { return e.kind() == ExprKind::Number; }
} // namespace

Expr Expr::add(Expr l, Expr r) {
    if (is_number(l) && is_number(r)) return number(l.value() + r.value());
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Add;
    n->kids = {std::move(l), std::move(r)};
    return Expr(std::move(n));
}

Expr Expr::sub(Expr l, Expr r) {
    if (is_number(l) && is_number(r)) return number(l.value() - r.value());
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Sub;
    n->kids = {std::move(l), std::move(r)};
    return Expr(std::move(n));
}

Expr Expr::neg(Expr e) {
    if (is_number(e)) return number(-e.value());
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Neg;
    n->kids = {std::move(e)};
    return Expr(std::move(n));
}

Expr Expr::mul(Expr l, Expr r) {
    if (is_number(l) && is_number(r)) return number(l.value() * r.value());
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Mul;
    n->kids = {std::move(l), std::move(r)};
    return Expr(std::move(n));
}

Expr Expr::div(Expr l, Expr r) {
    if (is_number(l) && is_number(r) && r.value() != 0)
        return number(Rat(l.value() / r.value()));
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Div;
    n->kids = {std::move(l), std::move(r)};
    return Expr(std::move(n));
}

Expr Expr::pow(Expr base, long exponent) {
    if (is_number(base) && (base.value() != 0 || exponent >= 0)) {
        if (exponent == 0) return number(Rat(1)); // 0^0 = 1 by convention
        return number(rat_ipow(base.value(), exponent));
    }
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Pow;
    n->exponent = exponent;
    n->kids = {std::move(base)};
    return Expr(std::move(n));
}

Expr Expr::sin(Expr e) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Sin;
    n->kids = {std::move(e)};
    return Expr(std::move(n));
}

Expr Expr::cos(Expr e) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Cos;
    n->kids = {std::move(e)};
    return Expr(std::move(n));
}

Expr Expr::abs(Expr e) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Abs;
    n->kids = {std::move(e)};
    return Expr(std::move(n));
}

bool Expr::operator==(const Expr& other) const {
    if (node_ == other.node_) return true;
    if (kind() != other.kind()) return false;
    switch (kind()) {
    case ExprKind::Number:
        return value() == other.value();
    case ExprKind::Pow:
        return exponent() == other.exponent() && child(0) == other.child(0);
    default:
        if (child_count() != other.child_count()) return false;
        for (std::size_t i = 0; i < child_count(); ++i)
            if (!(child(i) == other.child(i))) return false;
        return true;
    }
}

// --- parsing ---------------------------------------------------------------

namespace {

/// Hard cap on folded integer exponents; keeps exact evaluation bounded.
constexpr long kMaxExponent = 1024;

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        Expr e = parse_expression();
        skip_ws();
        if (pos_ < text_.size())
            throw Error(Errc::SyntaxError, "unexpected trailing input", pos_);
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool consume(char ch) {
        if (peek() == ch) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char ch, const char* what) {
        if (!consume(ch))
            throw Error(Errc::SyntaxError, std::string("expected ") + what, pos_);
    }

    Expr parse_expression() {
        Expr e = parse_term();
        for (;;) {
            if (consume('+'))
                e = Expr::add(std::move(e), parse_term());
            else if (consume('-'))
                e = Expr::sub(std::move(e), parse_term());
            else
                return e;
        }
    }

    Expr parse_term() {
        Expr e = parse_unary();
        for (;;) {
            if (consume('*'))
                e = Expr::mul(std::move(e), parse_unary());
            else if (consume('/'))
                e = Expr::div(std::move(e), parse_unary());
            else
                return e;
        }
    }

    Expr parse_unary() {
        if (consume('-')) return Expr::neg(parse_unary());
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (consume('^')) return Expr::pow(std::move(base), parse_exponent_chain());
        return base;
    }

    // Exponents are integer literals (optionally signed, optionally in
    // parentheses); a chain a^b^c folds right-associatively in the integers.
    long parse_exponent_chain() {
        long e = parse_exponent_literal();
        if (consume('^')) {
            long rest = parse_exponent_chain();
            if (rest < 0)
                throw Error(Errc::SyntaxError, "non-integer exponent value", pos_);
            long acc = 1;
            for (long i = 0; i < rest; ++i) {
                acc *= e;
                if (acc > kMaxExponent || acc < -kMaxExponent)
                    throw Error(Errc::SyntaxError, "exponent too large", pos_);
            }
            e = acc;
        }
        return e;
    }

    long parse_exponent_literal() {
        skip_ws();
        if (consume('(')) {
            long v = parse_signed_int();
            expect(')', "')' after integer exponent");
            return v;
        }
        return parse_signed_int();
    }

    long parse_signed_int() {
        skip_ws();
        bool negative = consume('-');
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw Error(Errc::SyntaxError, "expected integer exponent", pos_);
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > kMaxExponent)
                throw Error(Errc::SyntaxError, "exponent too large", start);
            ++pos_;
        }
        return negative ? -v : v;
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size())
            throw Error(Errc::SyntaxError, "unexpected end of input", pos_);
        char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            Expr e = parse_expression();
            expect(')', "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) return Expr::number(parse_number());
        if (std::isalpha(static_cast<unsigned char>(ch))) return parse_identifier();
        throw Error(Errc::SyntaxError, std::string("unexpected character '") + ch + "'", pos_);
    }

    Rat parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        BigInt whole{std::string(text_.substr(start, pos_ - start))};
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            std::size_t frac_start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == frac_start)
                throw Error(Errc::SyntaxError, "expected digits after decimal point", pos_);
            BigInt scale = 1;
            for (std::size_t i = frac_start; i < pos_; ++i) scale *= 10;
            BigInt num = whole * scale + BigInt{std::string(text_.substr(frac_start, pos_ - frac_start))};
            return Rat(num, scale);
        }
        return Rat(whole);
    }

    Expr parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "x") return Expr::variable();
        if (name == "pi") return Expr::pi();
        if (name == "sin" || name == "cos" || name == "abs") {
            expect('(', "'(' after function name");
            Expr inner = parse_expression();
            expect(')', "')'");
            if (name == "sin") return Expr::sin(std::move(inner));
            if (name == "cos") return Expr::cos(std::move(inner));
            return Expr::abs(std::move(inner));
        }
        throw Error(Errc::UnknownIdentifier, "'" + name + "'", start);
    }
};

} // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

// --- printing ---------------------------------------------------------------

namespace {

// Precedence for parenthesization: + - are 1, * / 2, unary - 3, ^ 4, atoms 5.
// Literal numbers print as "p/q" / "-p" and take the precedence of the
// operator their spelling re-parses through.
int print_prec(const Expr& e) {
    switch (e.kind()) {
    case ExprKind::Add:
    case ExprKind::Sub:
        return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
        return 2;
    case ExprKind::Neg:
        return 3;
    case ExprKind::Pow:
        return 4;
    case ExprKind::Number: {
        const Rat& v = e.value();
        if (denominator(v) != 1) return 2; // prints with '/'
        if (v < 0) return 3;               // prints with leading '-'
        return 5;
    }
    default:
        return 5;
    }
}

void print_rec(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_prec, std::string& out) {
    if (print_prec(child) < min_prec) {
        out += '(';
        print_rec(child, out);
        out += ')';
    } else {
        print_rec(child, out);
    }
}

void print_rec(const Expr& e, std::string& out) {
    switch (e.kind()) {
    case ExprKind::Number:
        out += rat_to_string(e.value());
        return;
    case ExprKind::Variable:
        out += 'x';
        return;
    case ExprKind::Pi:
        out += "pi";
        return;
    case ExprKind::Add:
        print_child(e.child(0), 1, out);
        out += '+';
        print_child(e.child(1), 2, out);
        return;
    case ExprKind::Sub:
        print_child(e.child(0), 1, out);
        out += '-';
        print_child(e.child(1), 2, out);
        return;
    case ExprKind::Mul:
        print_child(e.child(0), 2, out);
        out += '*';
        print_child(e.child(1), 3, out);
        return;
    case ExprKind::Div:
        print_child(e.child(0), 2, out);
        out += '/';
        print_child(e.child(1), 3, out);
        return;
    case ExprKind::Neg:
        out += '-';
        print_child(e.child(0), 3, out);
        return;
    case ExprKind::Pow:
        print_child(e.child(0), 5, out);
        out += '^';
        if (e.exponent() < 0) {
            out += '(';
            out += std::to_string(e.exponent());
            out += ')';
        } else {
            out += std::to_string(e.exponent());
        }
        return;
    case ExprKind::Sin:
        out += "sin(";
        print_rec(e.child(0), out);
        out += ')';
        return;
    case ExprKind::Cos:
        out += "cos(";
        print_rec(e.child(0), out);
        out += ')';
        return;
    case ExprKind::Abs:
        out += "abs(";
        print_rec(e.child(0), out);
        out += ')';
        return;
    }
}

} // namespace

std::string print(const Expr& e) {
    std::string out;
    print_rec(e, out);
    return out;
}

// --- differentiation --------------------------------------------------------

Expr differentiate(const Expr& e) {
    switch (e.kind()) {
    case ExprKind::Number:
    case ExprKind::Pi:
        return Expr::number(Rat(0));
    case ExprKind::Variable:
        return Expr::number(Rat(1));
    case ExprKind::Add:
        return Expr::add(differentiate(e.child(0)), differentiate(e.child(1)));
    case ExprKind::Sub:
        return Expr::sub(differentiate(e.child(0)), differentiate(e.child(1)));
    case ExprKind::Neg:
        return Expr::neg(differentiate(e.child(0)));
    case ExprKind::Mul: {
        const Expr& u = e.child(0);
        const Expr& v = e.child(1);
        return Expr::add(Expr::mul(differentiate(u), v), Expr::mul(u, differentiate(v)));
    }
    case ExprKind::Div: {
        const Expr& u = e.child(0);
        const Expr& v = e.child(1);
        Expr num = Expr::sub(Expr::mul(differentiate(u), v), Expr::mul(u, differentiate(v)));
        return Expr::div(std::move(num), Expr::pow(v, 2));
    }
    case ExprKind::Pow: {
        long n = e.exponent();
        if (n == 0) return Expr::number(Rat(0));
        const Expr& u = e.child(0);
        Expr factor = Expr::mul(Expr::number(Rat(n)), Expr::pow(u, n - 1));
        return Expr::mul(std::move(factor), differentiate(u));
    }
    case ExprKind::Sin:
        return Expr::mul(Expr::cos(e.child(0)), differentiate(e.child(0)));
    case ExprKind::Cos:
        return Expr::mul(Expr::neg(Expr::sin(e.child(0))), differentiate(e.child(0)));
    case ExprKind::Abs:
        throw Error(Errc::DifferentiateAbs, "abs is not differentiable at 0");
    }
    throw Error(Errc::InvariantViolation, "unhandled expression kind");
}

// --- evaluation -------------------------------------------------------------

namespace {

template <class S>
struct EvalOps;

template <>
struct EvalOps<double> {
    static double from_rat(const Rat& r) { return to_double(r); }
    static double pi() { return M_PI; }
    static double sin(double v) { return std::sin(v); }
    static double cos(double v) { return std::cos(v); }
};

template <>
struct EvalOps<Rat> {
    static Rat from_rat(const Rat& r) { return r; }
    [[noreturn]] static Rat pi() {
        throw Error(Errc::MissingExactOracle, "pi has no exact rational value");
    }
    [[noreturn]] static Rat sin(const Rat&) {
        throw Error(Errc::MissingExactOracle, "sin has no exact rational value");
    }
    [[noreturn]] static Rat cos(const Rat&) {
        throw Error(Errc::MissingExactOracle, "cos has no exact rational value");
    }
};

template <class S>
S eval_rec(const Expr& e, const S& x) {
    using Ops = EvalOps<S>;
    switch (e.kind()) {
    case ExprKind::Number:
        return Ops::from_rat(e.value());
    case ExprKind::Variable:
        return x;
    case ExprKind::Pi:
        return Ops::pi();
    case ExprKind::Add:
        return eval_rec(e.child(0), x) + eval_rec(e.child(1), x);
    case ExprKind::Sub:
        return eval_rec(e.child(0), x) - eval_rec(e.child(1), x);
    case ExprKind::Neg:
        return -eval_rec(e.child(0), x);
    case ExprKind::Mul:
        return eval_rec(e.child(0), x) * eval_rec(e.child(1), x);
    case ExprKind::Div: {
        S den = eval_rec(e.child(1), x);
        if (den == S(0)) throw Error(Errc::DomainViolation, "division by zero");
        return S(eval_rec(e.child(0), x) / den);
    }
    case ExprKind::Pow: {
        S base = eval_rec(e.child(0), x);
        long n = e.exponent();
        if (n == 0) return S(1);
        if (base == S(0)) {
            if (n < 0) throw Error(Errc::DomainViolation, "zero base with negative exponent");
            return S(0);
        }
        S acc(1), b = base;
        unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1UL
                                : static_cast<unsigned long>(n);
        for (; k > 0; k >>= 1) {
            if (k & 1) acc = S(acc * b);
            b = S(b * b);
        }
        return n < 0 ? S(S(1) / acc) : acc;
    }
    case ExprKind::Sin:
        return Ops::sin(eval_rec(e.child(0), x));
    case ExprKind::Cos:
        return Ops::cos(eval_rec(e.child(0), x));
    case ExprKind::Abs:
        return abs_of(eval_rec(e.child(0), x));
    }
    throw Error(Errc::InvariantViolation, "unhandled expression kind");
}

} // namespace

double eval_f64(const Expr& e, double x) { return eval_rec<double>(e, x); }
Rat eval_exact(const Expr& e, const Rat& x) { return eval_rec<Rat>(e, x); }

bool is_rational_closed(const Expr& e) {
    switch (e.kind()) {
    case ExprKind::Pi:
    case ExprKind::Sin:
    case ExprKind::Cos:
        return false;
    default:
        for (std::size_t i = 0; i < e.child_count(); ++i)
            if (!is_rational_closed(e.child(i))) return false;
        return true;
    }
}

Fn1D to_fn(const Expr& e, Interval domain) {
    Fn1D f;
    f.name = print(e);
    f.domain = domain;
    f.eval_fn = [e](double x) { return eval_f64(e, x); };

    try {
        Expr d = differentiate(e);
        f.deriv_fn = [d](double x) { return eval_f64(d, x); };
        if (is_rational_closed(e))
            f.exact_deriv_fn = [d](const Rat& x) { return eval_exact(d, x); };
    } catch (const Error& err) {
        if (err.code() != Errc::DifferentiateAbs) throw;
        // abs occurs somewhere: the function stays evaluate-only.
    }

    if (is_rational_closed(e))
        f.exact_eval_fn = [e](const Rat& x) { return eval_exact(e, x); };
    return f;
}

} // namespace incr
