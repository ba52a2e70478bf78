#include "incr/witness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "bisect_internal.hpp"
#include "incr/error.hpp"

namespace incr {

namespace {

void require_inside(const Fn1D& f, const Interval& iv) {
    if (!(f.domain.lo <= iv.lo && iv.hi <= f.domain.hi))
        throw Error(Errc::DomainViolation, "interval leaves the domain of " + f.name);
}

void require_inside(const Fn1D& f, const RatInterval& iv) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    bool lo_ok = f.domain.lo == -inf || rat_from_double(f.domain.lo) <= iv.lo;
    bool hi_ok = f.domain.hi == inf || iv.hi <= rat_from_double(f.domain.hi);
    if (!lo_ok || !hi_ok)
        throw Error(Errc::DomainViolation, "interval leaves the domain of " + f.name);
}

template <class S>
S measure(detail::BoundKind kind, const S& delta) {
    if (kind == detail::BoundKind::AbsFloor) return abs_of(delta);
    if (kind == detail::BoundKind::SignedFloor) return delta;
    return S(-delta);
}

// Float mode allows the per-level share to shrink by the fixed relative
// slack; the bisection only accumulates ~2 ulp of relative error per level,
// so 1e-12 dominates rounding for any practical depth. The slack must widen
// the admissible set for either sign of the bound (signed rules can carry a
// negative or zero target).
template <class S>
bool meets_floor(const S& m, const S& bound) {
    if constexpr (scalar_traits<S>::exact)
        return m >= bound;
    else
        return m >= bound - 1e-12 * abs_of(bound);
}

template <class S>
Stationary detect_stationary(const std::vector<S>& a_seq, const std::vector<S>& b_seq) {
    auto last8_equal = [](const std::vector<S>& v) {
        if (v.size() < 8) return false;
        const S& ref = v[v.size() - 8];
        for (std::size_t i = v.size() - 7; i < v.size(); ++i)
            if (!(v[i] == ref)) return false;
        return true;
    };
    if (last8_equal(a_seq)) return Stationary::LeftStationary;
    if (last8_equal(b_seq)) return Stationary::RightStationary;
    return Stationary::None;
}

template <class S>
void attach_deriv(const Fn1D& fn, BisectionTrace<S>& t, const S& width, detail::BoundKind kind) {
    constexpr bool exact = scalar_traits<S>::exact;
    const bool have = exact ? fn.has_exact_deriv() : fn.has_deriv();
    if (!have) return;
    S der;
    try {
        if constexpr (exact)
            der = deriv_at_exact(fn, t.c);
        else
            der = deriv_at(fn, t.c);
    } catch (const Error& e) {
        // c can sit exactly on a point where the derivative oracle is
        // undefined; report nothing rather than a made-up value.
        if (e.code() == Errc::DomainViolation) return;
        throw;
    }
    t.deriv_at_c = der;
    const S floor = S(t.d / width);
    S tol;
    if constexpr (exact)
        tol = Rat(Rat(1, 1000000) * (1 + abs_of(floor)));
    else
        tol = 1e-6 * (1.0 + abs_of(floor));
    switch (kind) {
        case detail::BoundKind::AbsFloor:
            t.deriv_floor_ok = abs_of(der) >= S(floor - tol);
            break;
        case detail::BoundKind::SignedFloor:
            t.deriv_floor_ok = der >= S(floor - tol);
            break;
        case detail::BoundKind::SignedCeil:
            t.deriv_floor_ok = der <= S(floor + tol);
            break;
    }
}

template <class S, class IV>
BisectionTrace<S> bisect_core(const Fn1D& fn, const IV& iv, detail::BoundKind kind, int levels,
                              HalvingRule rule) {
    if (levels < 1) throw Error(Errc::BadParam, "levels must be >= 1");
    require_inside(fn, iv);
    auto sf = as_scalar_fn<S>(fn);
    S a = iv.lo, b = iv.hi;
    S fa = sf.eval(a), fb = sf.eval(b);
    const S d0 = S(fb - fa);
    const S big_d = measure(kind, d0);
    // The absolute rule degenerates at d = 0 (every floor is trivial); the
    // signed rules stay sound for any sign of d, which the inequality
    // checkers rely on when attaching counter-witnesses.
    if (kind == detail::BoundKind::AbsFloor && !(big_d > 0))
        throw Error(Errc::InvariantViolation, "dichotomy requires a usable endpoint increment");

    BisectionTrace<S> t;
    t.rule = rule;
    t.levels = levels;
    t.d = kind == detail::BoundKind::AbsFloor ? big_d : d0;
    auto push = [&t](const S& aa, const S& bb, const S& va, const S& vb) {
        t.a_seq.push_back(aa);
        t.b_seq.push_back(bb);
        t.f_a.push_back(va);
        t.f_b.push_back(vb);
        t.slopes.push_back(S((vb - va) / (bb - aa)));
    };
    push(a, b, fa, fb);

    S bound = big_d;
    for (int n = 1; n <= levels; ++n) {
        bound = S(bound / 2);
        const S c = S((a + b) / 2);
        if (!(a < c && c < b))
            throw Error(Errc::LevelTooDeep, "interval no longer splittable at this depth");
        const S fc = sf.eval(c);
        const S ml = measure(kind, S(fc - fa));
        const S mr = measure(kind, S(fb - fc));
        const bool keep_left =
            rule == HalvingRule::LeftFirst ? meets_floor(ml, bound) : !(mr > ml);
        if (keep_left) {
            b = c;
            fb = fc;
        } else {
            a = c;
            fa = fc;
        }
        // Halving-rule soundness: the kept half must still hold its share.
        if (!meets_floor(measure(kind, S(fb - fa)), bound))
            throw Error(Errc::InvariantViolation, "no half kept the required increment share");
        push(a, b, fa, fb);
    }
    t.c = S((a + b) / 2);
    t.stationary = detect_stationary(t.a_seq, t.b_seq);
    attach_deriv(fn, t, S(iv.hi - iv.lo), kind);
    return t;
}

} // namespace

namespace detail {

BisectionTrace<double> bisect_trace(const Fn1D& f, const Interval& iv, BoundKind kind, int levels,
                                    HalvingRule rule) {
    return bisect_core<double>(f, iv, kind, levels, rule);
}

BisectionTrace<Rat> bisect_trace_exact(const Fn1D& f, const RatInterval& iv, BoundKind kind,
                                       int levels, HalvingRule rule) {
    return bisect_core<Rat>(f, iv, kind, levels, rule);
}

} // namespace detail

// --- dichotomy witnesses ------------------------------------------------------

BisectionTrace<double> fcd_witness(const Fn1D& f, const Interval& iv, int levels,
                                   HalvingRule rule) {
    require_inside(f, iv);
    if (eval_at(f, iv.lo) == eval_at(f, iv.hi))
        throw Error(Errc::EqualEndpointValues, "dichotomy needs f(a) != f(b)");
    return detail::bisect_trace(f, iv, detail::BoundKind::AbsFloor, levels, rule);
}

BisectionTrace<Rat> fcd_witness_exact(const Fn1D& f, const RatInterval& iv, int levels,
                                      HalvingRule rule) {
    require_inside(f, iv);
    if (eval_at_exact(f, iv.lo) == eval_at_exact(f, iv.hi))
        throw Error(Errc::EqualEndpointValues, "dichotomy needs f(a) != f(b)");
    return detail::bisect_trace_exact(f, iv, detail::BoundKind::AbsFloor, levels, rule);
}

BisectionTrace<double> lagrange_witness(const Fn1D& f, const Interval& iv, Orientation want,
                                        int levels, HalvingRule rule) {
    require_inside(f, iv);
    const double fa = eval_at(f, iv.lo), fb = eval_at(f, iv.hi);
    if (want == Orientation::Positive && !(fa < fb))
        throw Error(Errc::WrongOrientation, "Positive needs f(a) < f(b)");
    if (want == Orientation::Negative && !(fb < fa))
        throw Error(Errc::WrongOrientation, "Negative needs f(b) < f(a)");
    const auto kind = want == Orientation::Positive ? detail::BoundKind::SignedFloor
                                                    : detail::BoundKind::SignedCeil;
    return detail::bisect_trace(f, iv, kind, levels, rule);
}

BisectionTrace<Rat> lagrange_witness_exact(const Fn1D& f, const RatInterval& iv, Orientation want,
                                           int levels, HalvingRule rule) {
    require_inside(f, iv);
    const Rat fa = eval_at_exact(f, iv.lo), fb = eval_at_exact(f, iv.hi);
    if (want == Orientation::Positive && !(fa < fb))
        throw Error(Errc::WrongOrientation, "Positive needs f(a) < f(b)");
    if (want == Orientation::Negative && !(fb < fa))
        throw Error(Errc::WrongOrientation, "Negative needs f(b) < f(a)");
    const auto kind = want == Orientation::Positive ? detail::BoundKind::SignedFloor
                                                    : detail::BoundKind::SignedCeil;
    return detail::bisect_trace_exact(f, iv, kind, levels, rule);
}

std::optional<BisectionTrace<double>> iaf_refute(const Fn1D& f, const Interval& iv, double k,
                                                 int levels) {
    if (k < 0) throw Error(Errc::NegativeK, "k must be >= 0");
    require_inside(f, iv);
    const double delta = std::abs(eval_at(f, iv.hi) - eval_at(f, iv.lo));
    if (!(delta > k * (iv.hi - iv.lo))) return std::nullopt;
    return detail::bisect_trace(f, iv, detail::BoundKind::AbsFloor, levels,
                                HalvingRule::LeftFirst);
}

std::optional<BisectionTrace<Rat>> iaf_refute_exact(const Fn1D& f, const RatInterval& iv,
                                                    const Rat& k, int levels) {
    if (k < 0) throw Error(Errc::NegativeK, "k must be >= 0");
    require_inside(f, iv);
    const Rat delta = Rat(abs_of(Rat(eval_at_exact(f, iv.hi) - eval_at_exact(f, iv.lo))));
    if (!(delta > Rat(k * (iv.hi - iv.lo)))) return std::nullopt;
    return detail::bisect_trace_exact(f, iv, detail::BoundKind::AbsFloor, levels,
                                      HalvingRule::LeftFirst);
}

// --- epsilon chain -------------------------------------------------------------

EpsilonChain epsilon_chain(const Fn1D& f, const Interval& iv, double bound_m, double epsilon,
                           double min_step) {
    if (!(epsilon > 0.0)) throw Error(Errc::BadParam, "epsilon must be > 0");
    if (!(min_step > 0.0)) throw Error(Errc::BadParam, "min_step must be > 0");
    require_inside(f, iv);

    EpsilonChain chain;
    chain.bound_m = bound_m;
    chain.epsilon = epsilon;
    const double limit = bound_m + epsilon;
    const double start = (iv.hi - iv.lo) / 8.0;

    double t = iv.lo;
    chain.knots.push_back(t);
    while (t < iv.hi) {
        bool advanced = false;
        for (double s = start; s >= min_step; s /= 2.0) {
            const double next = std::min(t + s, iv.hi);
            if (next <= t) break;
            const double p = (f.eval_fn(next) - f.eval_fn(t)) / (next - t);
            if (p <= limit) {
                chain.knots.push_back(next);
                chain.step_slopes.push_back(p);
                t = next;
                advanced = true;
                break;
            }
        }
        if (!advanced)
            throw Error::at_location(Errc::StepFloorReached,
                                     "no admissible step of at least min_step", t);
    }
    // Telescoping the accepted steps certifies the global bound; re-check it
    // directly against the endpoints (InvariantViolation would mean a bug).
    const double rise = f.eval_fn(iv.hi) - f.eval_fn(iv.lo);
    const double cap = limit * (iv.hi - iv.lo);
    if (rise > cap + 1e-9 * (1.0 + std::abs(cap)))
        throw Error(Errc::InvariantViolation, "telescoped chain bound failed");
    return chain;
}

// --- mean-value family ----------------------------------------------------------

namespace {

// Dense grid scan for the strongest interior deviation from the endpoint
// value, then ternary refinement inside the bracketing cells.
double interior_extremum_core(const std::function<double(double)>& g, double lo, double hi,
                              int grid, int refine_levels) {
    const double width = hi - lo;
    std::vector<double> xs(grid), vs(grid);
    for (int i = 0; i < grid; ++i) {
        xs[i] = i == grid - 1 ? hi : lo + width * i / (grid - 1);
        vs[i] = g(xs[i]);
    }
    bool constant = true;
    for (int i = 1; i < grid && constant; ++i) constant = vs[i] == vs[0];
    if (constant) return lo + width / 2.0;

    int imax = 1, imin = 1;
    for (int i = 2; i + 1 < grid; ++i) {
        if (vs[i] > vs[imax]) imax = i;
        if (vs[i] < vs[imin]) imin = i;
    }
    const bool maximize = vs[imax] - vs[0] >= vs[0] - vs[imin];
    const int pick = maximize ? imax : imin;

    double l = xs[pick - 1], r = xs[pick + 1];
    for (int it = 0; it < refine_levels; ++it) {
        const double m1 = l + (r - l) / 3.0;
        const double m2 = r - (r - l) / 3.0;
        if (!(l < m1 && m1 < m2 && m2 < r)) break;
        const bool drop_left = maximize ? g(m1) < g(m2) : g(m1) > g(m2);
        if (drop_left)
            l = m1;
        else
            r = m2;
    }
    return (l + r) / 2.0;
}

void check_grid_params(int grid, int refine_levels) {
    if (grid < 3) throw Error(Errc::BadParam, "grid must be >= 3");
    if (refine_levels < 0) throw Error(Errc::BadParam, "refine_levels must be >= 0");
}

// Shared by rolle_witness and mvt_witness: mvt's auxiliary has equal endpoint
// values by construction, so it skips the float-sensitive endpoint test and
// goes straight to the core with its own derivative gate.
double mean_value_core(const Fn1D& f, const Interval& iv, int grid, int refine_levels,
                       double secant) {
    auto g = [&f, secant, lo = iv.lo](double x) { return f.eval_fn(x) - secant * (x - lo); };
    const double c = interior_extremum_core(g, iv.lo, iv.hi, grid, refine_levels);
    if (f.has_deriv()) {
        const double res = std::abs(f.deriv_fn(c) - secant);
        if (res > 1e-6 * (1.0 + std::abs(secant)))
            throw Error(Errc::NoInteriorExtremum,
                        "refined point failed the derivative residual gate");
    }
    return c;
}

} // namespace

double rolle_witness(const Fn1D& f, const Interval& iv, int grid, int refine_levels) {
    check_grid_params(grid, refine_levels);
    require_inside(f, iv);
    const double flo = f.eval_fn(iv.lo), fhi = f.eval_fn(iv.hi);
    if (std::abs(flo - fhi) > 1e-12 * (1.0 + std::abs(flo)))
        throw Error(Errc::EndpointsNotEqual, "equal endpoint values required");

    const double c =
        interior_extremum_core([&f](double x) { return f.eval_fn(x); }, iv.lo, iv.hi, grid,
                               refine_levels);
    if (f.has_deriv()) {
        double sup_d = 0.0;
        for (int i = 0; i < grid; ++i) {
            const double x = i == grid - 1 ? iv.hi : iv.lo + (iv.hi - iv.lo) * i / (grid - 1);
            sup_d = std::max(sup_d, std::abs(f.deriv_fn(x)));
        }
        if (std::abs(f.deriv_fn(c)) > 1e-6 * (1.0 + sup_d))
            throw Error(Errc::NoInteriorExtremum,
                        "refined point failed the derivative residual gate");
    }
    return c;
}

double mvt_witness(const Fn1D& f, const Interval& iv, int grid, int refine_levels) {
    check_grid_params(grid, refine_levels);
    require_inside(f, iv);
    const double secant = (f.eval_fn(iv.hi) - f.eval_fn(iv.lo)) / (iv.hi - iv.lo);
    return mean_value_core(f, iv, grid, refine_levels, secant);
}

namespace {

// Locate x in [lo, hi] with |g(x) - v| <= accept: direct grid hits, then
// sign-change bisection, then tangency refinement (|g - v| can touch zero
// without crossing, e.g. when v is an extremal chord slope).
std::optional<double> solve_for_value(const std::function<double(double)>& g, double lo,
                                      double hi, double v, int bisect_levels, double accept) {
    constexpr int kGrid = 257;
    std::array<double, kGrid> xs{}, res{};
    for (int i = 0; i < kGrid; ++i) {
        xs[i] = i == kGrid - 1 ? hi : lo + (hi - lo) * i / (kGrid - 1);
        res[i] = g(xs[i]) - v;
    }
    for (int i = 0; i < kGrid; ++i)
        if (std::abs(res[i]) <= accept) return xs[i];

    for (int i = 0; i + 1 < kGrid; ++i) {
        if ((res[i] < 0.0) == (res[i + 1] < 0.0)) continue;
        double a = xs[i], b = xs[i + 1], ra = res[i];
        for (int it = 0; it < bisect_levels; ++it) {
            const double m = (a + b) / 2.0;
            if (!(a < m && m < b)) break;
            const double rm = g(m) - v;
            if (rm == 0.0) {
                a = b = m;
                break;
            }
            if ((rm < 0.0) == (ra < 0.0)) {
                a = m;
                ra = rm;
            } else {
                b = m;
            }
        }
        const double x = (a + b) / 2.0;
        if (std::abs(g(x) - v) <= accept) return x;
    }

    int ibest = 0;
    for (int i = 1; i < kGrid; ++i)
        if (std::abs(res[i]) < std::abs(res[ibest])) ibest = i;
    double l = xs[std::max(0, ibest - 1)], r = xs[std::min(kGrid - 1, ibest + 1)];
    for (int it = 0; it < 90; ++it) {
        const double m1 = l + (r - l) / 3.0;
        const double m2 = r - (r - l) / 3.0;
        if (!(l < m1 && m1 < m2 && m2 < r)) break;
        if (std::abs(g(m1) - v) > std::abs(g(m2) - v))
            l = m1;
        else
            r = m2;
    }
    const double x = (l + r) / 2.0;
    if (std::abs(g(x) - v) <= accept) return x;
    return std::nullopt;
}

} // namespace

double darboux_witness(const Fn1D& f, const Interval& iv, double v, int bisect_levels) {
    if (bisect_levels < 1) throw Error(Errc::BadParam, "bisect_levels must be >= 1");
    require_inside(f, iv);
    if (!f.has_deriv())
        throw Error(Errc::MissingDerivOracle, "intermediate-value search needs a derivative");
    const double lo = iv.lo, hi = iv.hi, width = hi - lo;
    const double inset = width * 1e-6;
    const double accept = 1e-9 * (1.0 + std::abs(v));

    // Chord slope from the left endpoint, anchored at the derivative just
    // inside so the map is continuous on the closed interval.
    auto phi = [&](double x) {
        return x <= lo ? f.deriv_fn(lo + inset) : (f.eval_fn(x) - f.eval_fn(lo)) / (x - lo);
    };
    std::optional<double> split = solve_for_value(phi, lo, hi, v, bisect_levels, accept);
    double c;
    if (split) {
        const double x = std::min(std::max(*split, lo + inset), hi);
        c = mvt_witness(f, Interval(lo, x), 1001, 60);
    } else {
        // Mirror map: chord slope into the right endpoint.
        auto psi = [&](double x) {
            return x >= hi ? f.deriv_fn(hi - inset) : (f.eval_fn(hi) - f.eval_fn(x)) / (hi - x);
        };
        split = solve_for_value(psi, lo, hi, v, bisect_levels, accept);
        if (!split)
            throw Error(Errc::TargetNotBracketed,
                        "v is outside the range of both chord-slope maps");
        const double x = std::min(std::max(*split, lo), hi - inset);
        c = mvt_witness(f, Interval(x, hi), 1001, 60);
    }
    if (std::abs(f.deriv_fn(c) - v) > 1e-6 * (1.0 + std::abs(v)))
        throw Error(Errc::InvariantViolation, "mean-value stage missed the target slope");
    return c;
}

} // namespace incr
