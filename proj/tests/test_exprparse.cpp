#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "incr/error.hpp"
#include "incr/expr.hpp"

#include "support.hpp"

using namespace incr;

namespace {

bool throws_syntax_at(const std::string& text, std::size_t offset) {
    try {
        parse(text);
    } catch (const Error& e) {
        return e.code() == Errc::SyntaxError && e.offset() == offset;
    }
    return false;
}

} // namespace

TEST_CASE("evaluation follows precedence and associativity") {
    CHECK(eval_f64(parse("1 + 2*3"), 0.0) == 7.0);
    CHECK(eval_f64(parse("(1 + 2)*3"), 0.0) == 9.0);
    CHECK(eval_f64(parse("2^3^2"), 0.0) == 512.0);  // right-associative
    CHECK(eval_f64(parse("-x^2"), 3.0) == -9.0);    // ^ binds tighter than unary -
    CHECK(eval_f64(parse("10 - 4 - 3"), 0.0) == 3.0);
    CHECK(eval_f64(parse("16/4/2"), 0.0) == 2.0);
    CHECK(eval_f64(parse("x^3"), 2.0) == 8.0);
    CHECK(eval_f64(parse("sin(pi/2)"), 0.0) == doctest::Approx(1.0));
    CHECK(eval_f64(parse("abs(x - 2)"), 0.5) == 1.5);
    CHECK(eval_exact(parse("(2/3)*x + 1/6"), Rat(1, 2)) == Rat(1, 2));
}

TEST_CASE("print/parse round trip is structural identity") {
    const std::vector<std::string> corpus = {
        "x",  "x^2 - x",  "2*x^3 - x/3 + 1/2", "sin(x^2)", "cos(2*x) + sin(x)",
        "abs(x - 1/2)", "-x + 3", "(x + 1)*(x - 1)", "x/(1 + x^2)", "pi*x - 1",
    };
    for (const auto& text : corpus) {
        const Expr e = parse(text);
        const Expr back = parse(print(e));
        CHECK(back == e);
    }
    // and derivatives reprint cleanly too
    for (const auto& text : corpus) {
        if (text.find("abs") != std::string::npos) continue;
        const Expr d = differentiate(parse(text));
        CHECK(parse(print(d)) == d);
    }
}

TEST_CASE("symbolic derivative matches central differences") {
    auto rng = support::make_rng(77);
    std::uniform_real_distribution<double> pts(-1.5, 1.5);
    const std::vector<std::string> corpus = {
        "x^4 - 2*x^2 + x", "sin(x^2)", "x*cos(x)", "sin(x)/(2 + cos(x))",
        "(1 + x^2)^3",     "x/(1 + x^2)",
    };
    for (const auto& text : corpus) {
        const Expr e = parse(text);
        const Expr d = differentiate(e);
        for (int i = 0; i < 20; ++i) {
            const double x = pts(rng);
            const double sym = eval_f64(d, x);
            const double h = 1e-6;
            const double fd = (eval_f64(e, x + h) - eval_f64(e, x - h)) / (2.0 * h);
            CHECK(sym == doctest::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("rational closure decides exact oracle availability") {
    CHECK(is_rational_closed(parse("x^2 - 2/3")));
    CHECK(is_rational_closed(parse("abs(x)")));
    CHECK(!is_rational_closed(parse("sin(x)")));
    CHECK(!is_rational_closed(parse("pi*x")));

    const Fn1D rational = to_fn(parse("x^2/2"), Interval(-10.0, 10.0));
    CHECK(rational.has_exact());
    CHECK(eval_at_exact(rational, Rat(1, 3)) == Rat(1, 18));
    CHECK(rational.has_exact_deriv());
    CHECK(deriv_at_exact(rational, Rat(1, 3)) == Rat(1, 3));

    const Fn1D wavy = to_fn(parse("sin(x)"), Interval(-10.0, 10.0));
    CHECK(!wavy.has_exact());
    CHECK(wavy.has_deriv());
    CHECK(deriv_at(wavy, 0.0) == doctest::Approx(1.0));

    // abs blocks the symbolic derivative but not exact evaluation
    const Fn1D vee = to_fn(parse("abs(x)"), Interval(-10.0, 10.0));
    CHECK(!vee.has_deriv());
    CHECK(vee.has_exact());
    CHECK(eval_at_exact(vee, Rat(-3, 7)) == Rat(3, 7));
}

TEST_CASE("parse errors carry the right code and byte offset") {
    CHECK(throws_syntax_at("1 +", 3));
    CHECK(throws_syntax_at("(x + 1", 6));
    CHECK(throws_syntax_at("x^y", 2));      // exponent must be an integer literal
    CHECK(throws_syntax_at("sin x", 4));    // functions need parentheses

    try {
        parse("2*foo + 1");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnknownIdentifier);
        CHECK(e.offset() == 2);
    }

    try {
        differentiate(parse("x + abs(x)"));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DifferentiateAbs);
    }

    try {
        eval_f64(parse("1/x"), 0.0);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DomainViolation);
    }

    try {
        eval_exact(parse("sin(x)"), Rat(0));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MissingExactOracle);
    }
}

TEST_CASE("literal folding keeps numerals exact") {
    const Expr e = parse("1/3 + 1/6");
    CHECK(e.kind() == ExprKind::Number);
    CHECK(e.value() == Rat(1, 2));
    CHECK(eval_exact(parse("2^10"), Rat(0)) == Rat(1024));
}
