#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "incr/cantor.hpp"
#include "incr/error.hpp"

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

TEST_CASE("level structure: counts, widths, ordering, plateau values") {
    const StaircaseLevel l1 = kn_intervals(1);
    REQUIRE(l1.intervals.size() == 2);
    REQUIRE(l1.plateaus.size() == 1);
    CHECK(l1.intervals[0].lo == Rat(0));
    CHECK(l1.intervals[0].hi == Rat(1, 3));
    CHECK(l1.intervals[1].lo == Rat(2, 3));
    CHECK(l1.intervals[1].hi == Rat(1));
    CHECK(l1.plateaus[0].first.lo == Rat(1, 3));
    CHECK(l1.plateaus[0].first.hi == Rat(2, 3));
    CHECK(l1.plateaus[0].second == Rat(1, 2));

    for (int n = 0; n <= 8; ++n) {
        const StaircaseLevel l = kn_intervals(n);
        CHECK(l.n == n);
        CHECK(l.intervals.size() == (1u << n));
        CHECK(l.plateaus.size() == (1u << n) - 1);
        Rat w3(1);
        for (int i = 0; i < n; ++i) w3 /= 3;
        Rat prev_hi(-1);
        for (const auto& iv : l.intervals) {
            CHECK(iv.hi - iv.lo == w3);   // exact widths 3^-n
            CHECK(iv.lo > prev_hi);        // strictly ascending
            prev_hi = iv.hi;
        }
        // plateau k carries value (k+1)/2^n, ascending with the gaps
        Rat step(1);
        for (int i = 0; i < n; ++i) step /= 2;
        for (std::size_t k = 0; k < l.plateaus.size(); ++k) {
            CHECK(l.plateaus[k].second == step * static_cast<long>(k + 1));
            CHECK(l.plateaus[k].first.lo == l.intervals[k].hi);
            CHECK(l.plateaus[k].first.hi == l.intervals[k + 1].lo);
        }
    }

    CHECK(throws_code(Errc::LevelTooDeep, [] { kn_intervals(-1); }));
    CHECK(throws_code(Errc::LevelTooDeep, [] { kn_intervals(31); }));
}

TEST_CASE("approximants: endpoints exact, recursion identity, plateau lock") {
    for (int n = 0; n <= 12; ++n) {
        CHECK(staircase_eval(n, 0.0) == 0.0);
        CHECK(staircase_eval(n, 1.0) == 1.0);
    }
    // middle-third plateau from level 1 on
    CHECK(staircase_eval(1, 0.5) == 0.5);
    CHECK(staircase_eval(7, 0.41) == 0.5);
    CHECK(staircase_eval(7, 0.59) == 0.5);

    // f_n(x) = (1/2) f_{n-1}(3x) on [0, 1/3], mirrored on [2/3, 1]
    auto rng = support::make_rng(3301);
    std::uniform_real_distribution<double> left(0.0, 1.0 / 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = left(rng);
        for (int n : {1, 3, 6}) {
            CHECK(staircase_eval(n, x) == doctest::Approx(0.5 * staircase_eval(n - 1, 3 * x))
                                              .epsilon(1e-12));
            CHECK(staircase_eval(n, 1.0 - x) ==
                  doctest::Approx(1.0 - staircase_eval(n, x)).epsilon(1e-12));
        }
    }

    CHECK(throws_code(Errc::OutOfUnitInterval, [] { staircase_eval(3, -0.1); }));
    CHECK(throws_code(Errc::OutOfUnitInterval, [] { staircase_eval(3, 1.1); }));
    CHECK(throws_code(Errc::LevelTooDeep, [] { staircase_eval(31, 0.5); }));
}

TEST_CASE("exact evaluation agrees with float and with the digit map") {
    auto rng = support::make_rng(555);
    std::uniform_int_distribution<long> num(0, 728);
    for (int trial = 0; trial < 100; ++trial) {
        const long m = num(rng);
        const Rat x(m, 729); // 3^6
        const Rat exact = staircase_eval_exact(12, x);
        CHECK(to_double(exact) == doctest::Approx(staircase_eval(12, to_double(x))).epsilon(1e-12));
        // at terminating ternary points, deep approximants equal the limit,
        // whose value the independent digit map computes
        CHECK(exact == support::cantor_digit_oracle(m, 6));
    }
}

TEST_CASE("level selection for a uniform tolerance") {
    CHECK(staircase_level_for_tol(2.0) == 0);
    CHECK(staircase_level_for_tol(1.0) == 1);
    CHECK(staircase_level_for_tol(0.25) == 3);
    CHECK(staircase_level_for_tol(1e-6) == 21);
    CHECK(throws_code(Errc::BadParam, [] { staircase_level_for_tol(0.0); }));
    CHECK(throws_code(Errc::TolTooSmall, [] { staircase_level_for_tol(1e-12); }));

    // the chosen level really is within tol of deeper approximants
    const double tol = 1e-4;
    const int n = staircase_level_for_tol(tol);
    for (int i = 0; i <= 500; ++i) {
        const double x = i / 500.0;
        CHECK(std::abs(staircase_limit(x, tol) - staircase_eval(n + 6, x)) <= tol);
    }
}

TEST_CASE("monotone, continuous modulus between approximants") {
    // nondecreasing on a fine grid
    const int n = 10;
    double prev = 0.0;
    for (int i = 0; i <= 3000; ++i) {
        const double x = i / 3000.0;
        const double y = staircase_eval(n, x);
        CHECK(y >= prev);
        prev = y;
    }
    // successive approximants stay within 2^-n of each other
    for (int level = 0; level <= 10; ++level) {
        double sup = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double x = i / 2000.0;
            sup = std::max(sup, std::abs(staircase_eval(level + 1, x) - staircase_eval(level, x)));
        }
        CHECK(sup <= std::ldexp(1.0, -level));
    }
}
