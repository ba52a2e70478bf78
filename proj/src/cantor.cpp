#include "incr/cantor.hpp"

#include <cmath>

#include "incr/error.hpp"

namespace incr {

namespace {

void check_level(int n) {
    if (n < 0 || n > kMaxStaircaseLevel)
        throw Error(Errc::LevelTooDeep, "level " + std::to_string(n) + " outside [0, 30]");
}

} // namespace

StaircaseLevel kn_intervals(int n) {
    check_level(n);
    StaircaseLevel out;
    out.n = n;
    const std::size_t count = std::size_t{1} << n;
    out.intervals.reserve(count);

    // Reading the index bits MSB->LSB as ternary digits {0,2} enumerates the
    // surviving intervals in ascending order.
    BigInt den = 1;
    for (int k = 0; k < n; ++k) den *= 3;
    for (std::size_t i = 0; i < count; ++i) {
        BigInt a = 0;
        for (int bit = n - 1; bit >= 0; --bit) {
            a *= 3;
            if ((i >> bit) & 1) a += 2;
        }
        out.intervals.emplace_back(Rat(a, den), Rat(a + 1, den));
    }

    // Interior gaps; the approximant is constant (k+1)/2^n after interval k.
    Rat rise(1, BigInt(1) << n);
    out.plateaus.reserve(count - 1);
    for (std::size_t k = 0; k + 1 < count; ++k) {
        out.plateaus.emplace_back(
            RatInterval(out.intervals[k].hi, out.intervals[k + 1].lo),
            Rat(static_cast<long>(k) + 1) * rise);
    }
    return out;
}

double staircase_eval(int n, double x) {
    check_level(n);
    if (x < 0.0 || x > 1.0)
        throw Error(Errc::OutOfUnitInterval, "x = " + fmt_double(x) + " outside [0, 1]");
    double base = 0.0, w = 1.0;
    for (int k = 0; k < n; ++k) {
        if (x <= 1.0 / 3.0) {
            w *= 0.5;
            x = std::min(3.0 * x, 1.0);
        } else if (x < 2.0 / 3.0) {
            return base + 0.5 * w;
        } else {
            base += 0.5 * w;
            w *= 0.5;
            x = std::max(3.0 * x - 2.0, 0.0);
        }
    }
    return base + w * x;
}

Rat staircase_eval_exact(int n, const Rat& x_in) {
    check_level(n);
    if (x_in < 0 || x_in > 1)
        throw Error(Errc::OutOfUnitInterval, "x outside [0, 1]");
    Rat x = x_in, base(0), w(1);
    const Rat third(1, 3), two_thirds(2, 3);
    for (int k = 0; k < n; ++k) {
        if (x <= third) {
            w /= 2;
            x *= 3;
        } else if (x < two_thirds) {
            return base + w / 2;
        } else {
            base += w / 2;
            w /= 2;
            x = x * 3 - 2;
        }
    }
    return base + w * x;
}

int staircase_level_for_tol(double tol) {
    if (!(tol > 0.0)) throw Error(Errc::BadParam, "tol must be > 0");
    int n = 0;
    while (std::ldexp(1.0, 1 - n) > tol) {
        ++n;
        if (n > kMaxStaircaseLevel)
            throw Error(Errc::TolTooSmall,
                        "tol = " + fmt_double(tol) + " needs a level beyond 30");
    }
    return n;
}

double staircase_limit(double x, double tol) {
    return staircase_eval(staircase_level_for_tol(tol), x);
}

} // namespace incr
