#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "incr/error.hpp"
#include "incr/fn1d.hpp"
#include "incr/inequalities.hpp"

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

TEST_CASE("absolute increment bound: holds, fails with counter-witness") {
    const Fn1D s = catalog_lookup("sin");
    const auto good = check_iaf(s, Interval(0.0, 1.0), 1.0);
    CHECK(good.holds);
    CHECK(good.lhs == doctest::Approx(std::sin(1.0)));
    CHECK(good.rhs == 1.0);
    CHECK(!good.counter_witness);

    const Fn1D steep = catalog_lookup("affine", {Rat(2), Rat(0)});
    const auto bad = check_iaf(steep, Interval(0.0, 1.0), 1.0);
    CHECK(!bad.holds);
    CHECK(bad.margin == -1.0);
    REQUIRE(bad.counter_witness);
    // the trace certifies a slope strictly beyond k
    for (double sl : bad.counter_witness->slopes) CHECK(std::abs(sl) > 1.0);
    REQUIRE(bad.counter_witness->deriv_at_c);
    CHECK(std::abs(*bad.counter_witness->deriv_at_c) > 1.0);

    const auto exact = check_iaf_exact(steep, RatInterval(Rat(0), Rat(1)), Rat(2));
    CHECK(exact.holds);  // equality holds with zero slack
    CHECK(exact.margin == Rat(0));

    CHECK(throws_code(Errc::NegativeK, [&] { check_iaf(s, Interval(0.0, 1.0), -1.0); }));
}

TEST_CASE("two-sided bound reports the binding side") {
    const Fn1D sq = catalog_lookup("monomial", {Rat(2)}); // increment on [0,1] is 1
    const auto lower_bind = check_iafprime_exact(sq, RatInterval(Rat(0), Rat(1)), Rat(2), Rat(5));
    CHECK(!lower_bind.holds);
    CHECK(lower_bind.lhs == Rat(2));   // m (b-a), the violated side
    CHECK(lower_bind.rhs == Rat(1));   // f(b) - f(a)
    CHECK(lower_bind.margin == Rat(-1));
    REQUIRE(lower_bind.counter_witness);
    // witness for a slope *below* m: the signed ceiling trace
    for (const Rat& sl : lower_bind.counter_witness->slopes) CHECK(sl < Rat(2));

    const auto upper_bind = check_iafprime_exact(sq, RatInterval(Rat(0), Rat(1)), Rat(0), Rat(1, 2));
    CHECK(!upper_bind.holds);
    CHECK(upper_bind.lhs == Rat(1));        // f(b) - f(a)
    CHECK(upper_bind.rhs == Rat(1, 2));     // M (b-a)
    REQUIRE(upper_bind.counter_witness);
    for (const Rat& sl : upper_bind.counter_witness->slopes) CHECK(sl > Rat(1, 2));

    const auto ok = check_iafprime(sq, Interval(0.0, 1.0), 0.5, 2.0);
    CHECK(ok.holds);
    CHECK(ok.margin == doctest::Approx(0.5));

    CHECK(throws_code(Errc::BadBounds,
                      [&] { check_iafprime(sq, Interval(0.0, 1.0), 2.0, 1.0); }));
}

TEST_CASE("pairwise domination |df| <= dg") {
    const Fn1D s = catalog_lookup("sin");
    const Fn1D id = catalog_lookup("identity");
    const auto ok = check_iafg(s, id, Interval(0.0, 1.0));
    CHECK(ok.holds);

    // 2x against x fails, counter-witness taken on f
    const Fn1D steep = catalog_lookup("affine", {Rat(2), Rat(0)});
    const auto bad = check_iafg_exact(steep, id, RatInterval(Rat(0), Rat(1)));
    CHECK(!bad.holds);
    CHECK(bad.lhs == Rat(2));
    CHECK(bad.rhs == Rat(1));
    REQUIRE(bad.counter_witness);
    CHECK(bad.counter_witness->d == Rat(2));

    // flat f against decreasing g: violated, but |df| = 0 admits no
    // meaningful dichotomy certificate
    const Fn1D flat = catalog_lookup("poly", {Rat(1)});
    const Fn1D down = catalog_lookup("affine", {Rat(-1), Rat(0)});
    const auto degenerate = check_iafg(flat, down, Interval(0.0, 1.0));
    CHECK(!degenerate.holds);
    CHECK(!degenerate.counter_witness);

    // domain containment is checked on both functions
    const Fn1D cant = catalog_lookup("cantor", {Rat(3)});
    CHECK(throws_code(Errc::DomainMismatch,
                      [&] { check_iafg(cant, id, Interval(0.0, 2.0)); }));
    CHECK(throws_code(Errc::DomainMismatch,
                      [&] { check_iafg(id, cant, Interval(-1.0, 1.0)); }));
}

TEST_CASE("one-sided majorization accepts any sign of M") {
    const Fn1D down = catalog_lookup("affine", {Rat(-2), Rat(0)}); // -2x
    // decreasing function satisfies a negative one-sided cap
    const auto ok = check_maja_exact(down, RatInterval(Rat(0), Rat(1)), Rat(-2));
    CHECK(ok.holds);
    CHECK(ok.margin == Rat(0));

    const auto bad = check_maja_exact(down, RatInterval(Rat(0), Rat(1)), Rat(-3));
    CHECK(!bad.holds);
    REQUIRE(bad.counter_witness);
    // the signed trace certifies slopes above the violated cap even though
    // the increment itself is negative
    for (const Rat& sl : bad.counter_witness->slopes) CHECK(sl > Rat(-3));

    const Fn1D sq = catalog_lookup("monomial", {Rat(2)});
    const auto plain = check_maja(sq, Interval(0.0, 1.0), 2.0);
    CHECK(plain.holds);
    CHECK(!check_maja(sq, Interval(0.0, 1.0), 0.5).holds);
}

TEST_CASE("shift reduction composes oracles and preserves the premise") {
    const Fn1D s = catalog_lookup("sin");
    const auto [f1, f2] = reduce_iaf_to_iafprime(s, -1.0, 1.0);
    // f1 = f - m id = sin + x, f2 = M id - f = x - sin
    CHECK(eval_at(f1, 0.7) == doctest::Approx(std::sin(0.7) + 0.7));
    CHECK(eval_at(f2, 0.7) == doctest::Approx(0.7 - std::sin(0.7)));
    // f1 + f2 = (M - m) id exactly
    for (double x : {-1.3, 0.0, 0.4, 2.2})
        CHECK(eval_at(f1, x) + eval_at(f2, x) == doctest::Approx(2.0 * x));
    // premise -1 <= sin' <= 1 transfers: both derivatives land in [0, 2]
    for (int i = 1; i < 40; ++i) {
        const double x = -2.0 + 4.0 * i / 40.0;
        const double d1 = deriv_at(f1, x);
        const double d2 = deriv_at(f2, x);
        CHECK(d1 >= -1e-12);
        CHECK(d1 <= 2.0 + 1e-12);
        CHECK(d2 >= -1e-12);
        CHECK(d2 <= 2.0 + 1e-12);
    }
    // exact oracles compose when present
    const Fn1D sq = catalog_lookup("monomial", {Rat(2)});
    const auto [g1, g2] = reduce_iaf_to_iafprime(sq, -4.0, 4.0);
    CHECK(eval_at_exact(g1, Rat(1, 2)) == Rat(1, 4) + Rat(4) * Rat(1, 2));
    CHECK(deriv_at_exact(g2, Rat(1, 2)) == Rat(4) - Rat(1));

    CHECK(throws_code(Errc::BadBounds, [&] { reduce_iaf_to_iafprime(s, 2.0, 1.0); }));
}

TEST_CASE("derivative band estimate brackets the sampled oracle") {
    const Fn1D s = catalog_lookup("sin");
    const auto [lo, hi] = derivative_bound_estimate(s, Interval(0.0, M_PI), 1000);
    // interior sampling of cos over (0, pi): close to (-1, 1) but strictly inside
    CHECK(lo > -1.0);
    CHECK(hi < 1.0);
    CHECK(lo == doctest::Approx(-1.0).epsilon(1e-4));
    CHECK(hi == doctest::Approx(1.0).epsilon(1e-4));

    // independent re-computation on the same midpoint scheme
    double want_lo = 1e300, want_hi = -1e300;
    for (int i = 0; i < 1000; ++i) {
        const double x = 0.0 + (M_PI - 0.0) * (i + 0.5) / 1000;
        const double d = std::cos(x);
        want_lo = std::min(want_lo, d);
        want_hi = std::max(want_hi, d);
    }
    CHECK(lo == want_lo);
    CHECK(hi == want_hi);

    CHECK(throws_code(Errc::MissingDerivOracle, [] {
        derivative_bound_estimate(catalog_lookup("cantor", {Rat(2)}), Interval(0.0, 1.0), 10);
    }));
    CHECK(throws_code(Errc::BadParam,
                      [&] { derivative_bound_estimate(s, Interval(0.0, 1.0), 1); }));
}
