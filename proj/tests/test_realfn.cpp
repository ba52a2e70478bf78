#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "incr/error.hpp"
#include "incr/fn1d.hpp"

#include "support.hpp"

using namespace incr;

namespace {

bool throws_code(Errc want, const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        return e.code() == want;
    }
    return false;
}

} // namespace

TEST_CASE("catalog identity and affine evaluate and differentiate") {
    const Fn1D id = catalog_lookup("identity");
    CHECK(eval_at(id, 3.5) == 3.5);
    CHECK(deriv_at(id, -7.0) == 1.0);
    CHECK(eval_at_exact(id, Rat(2, 3)) == Rat(2, 3));
    CHECK(deriv_at_exact(id, Rat(5)) == Rat(1));

    const Fn1D aff = catalog_lookup("affine", {Rat(2), Rat(-1)}); // 2x - 1
    CHECK(eval_at(aff, 0.0) == -1.0);
    CHECK(eval_at(aff, 3.0) == 5.0);
    CHECK(deriv_at(aff, 100.0) == 2.0);
    CHECK(eval_at_exact(aff, Rat(1, 2)) == Rat(0));
}

TEST_CASE("catalog monomial and poly agree with the test-side Horner oracle") {
    const Fn1D cube = catalog_lookup("monomial", {Rat(3)});
    CHECK(eval_at(cube, 2.0) == 8.0);
    CHECK(deriv_at(cube, 2.0) == 12.0);
    CHECK(eval_at_exact(cube, Rat(-1, 2)) == Rat(-1, 8));

    auto rng = support::make_rng(401);
    for (int trial = 0; trial < 50; ++trial) {
        const auto coeffs = support::rand_poly_coeffs(rng, 4);
        const Fn1D f = catalog_lookup("poly", coeffs);
        const Rat x = support::rand_rat(rng, -9, 9, 7);
        CHECK(eval_at_exact(f, x) == support::horner<Rat>(coeffs, x));
        CHECK(deriv_at_exact(f, x) == support::horner<Rat>(support::deriv_coeffs(coeffs), x));
        const double xd = to_double(x);
        CHECK(eval_at(f, xd) == doctest::Approx(to_double(support::horner<Rat>(coeffs, x))));
    }
}

TEST_CASE("catalog sin has float oracles only") {
    const Fn1D s = catalog_lookup("sin");
    CHECK(eval_at(s, 0.0) == 0.0);
    CHECK(deriv_at(s, 0.0) == 1.0);
    CHECK(!s.has_exact());
    CHECK(throws_code(Errc::MissingExactOracle, [&] { eval_at_exact(s, Rat(0)); }));
}

TEST_CASE("fpq oscillator: values, derivative formula, flat point at zero") {
    const Fn1D f = catalog_lookup("fpq", {Rat(2), Rat(1)}); // x^2 sin(1/x)
    CHECK(eval_at(f, 0.0) == 0.0);
    CHECK(deriv_at(f, 0.0) == 0.0);
    const double x = 2.0 / M_PI;
    CHECK(eval_at(f, x) == doctest::Approx(x * x)); // sin(pi/2) = 1
    for (double t : {0.21, -0.37, 1.4}) {
        CHECK(deriv_at(f, t) == doctest::Approx(support::fd_deriv(f, t, 1e-7)).epsilon(1e-4));
    }

    // p = 1 keeps the function but leaves the derivative undefined at the
    // origin; only the origin query fails.
    const Fn1D edge = catalog_lookup("fpq", {Rat(1), Rat(1)});
    CHECK(eval_at(edge, 0.0) == 0.0);
    CHECK(throws_code(Errc::DomainViolation, [&] { deriv_at(edge, 0.0); }));
    CHECK(deriv_at(edge, 0.5) == doctest::Approx(support::fd_deriv(edge, 0.5, 1e-7)).epsilon(1e-4));

    CHECK(throws_code(Errc::BadParam, [] { catalog_lookup("fpq", {Rat(0), Rat(1)}); }));
    CHECK(throws_code(Errc::BadParam, [] { catalog_lookup("fpq", {Rat(2), Rat(0)}); }));
    CHECK(throws_code(Errc::BadParam, [] { catalog_lookup("fpq", {Rat(5, 2), Rat(1)}); }));
}

TEST_CASE("cantor entry is domain-restricted with no derivative oracle") {
    const Fn1D c = catalog_lookup("cantor", {Rat(4)});
    CHECK(eval_at(c, 0.0) == 0.0);
    CHECK(eval_at(c, 1.0) == 1.0);
    CHECK(eval_at(c, 0.5) == 0.5);
    CHECK(!c.has_deriv());
    CHECK(c.has_exact());
    CHECK(throws_code(Errc::DomainViolation, [&] { eval_at(c, 1.5); }));
    CHECK(throws_code(Errc::MissingDerivOracle, [&] { deriv_at(c, 0.5); }));
    CHECK(throws_code(Errc::BadParam, [] { catalog_lookup("cantor", {Rat(31)}); }));
}

TEST_CASE("catalog rejects unknown names and wrong arity") {
    CHECK(throws_code(Errc::UnknownName, [] { catalog_lookup("sinh"); }));
    CHECK(throws_code(Errc::BadArity, [] { catalog_lookup("identity", {Rat(1)}); }));
    CHECK(throws_code(Errc::BadArity, [] { catalog_lookup("affine", {Rat(1)}); }));
    CHECK(throws_code(Errc::BadArity, [] { catalog_lookup("poly", {}); }));
    CHECK(throws_code(Errc::BadParam, [] { catalog_lookup("monomial", {Rat(1, 2)}); }));
}

TEST_CASE("scalar adapters expose the right oracles per mode") {
    const Fn1D p = catalog_lookup("poly", {Rat(1), Rat(0), Rat(1)}); // 1 + x^2
    const auto fd = as_scalar_fn<double>(p);
    CHECK(fd.eval(2.0) == 5.0);
    REQUIRE(fd.deriv);
    CHECK(fd.deriv(2.0) == 4.0);
    const auto fx = as_scalar_fn<Rat>(p);
    CHECK(fx.eval(Rat(1, 3)) == Rat(10, 9));

    const Fn1D s = catalog_lookup("sin");
    CHECK(throws_code(Errc::MissingExactOracle, [&] { as_scalar_fn<Rat>(s); }));
}
