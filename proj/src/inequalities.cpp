#include "incr/inequalities.hpp"

#include <cmath>
#include <limits>

#include "bisect_internal.hpp"
#include "incr/error.hpp"

namespace incr {

namespace {

constexpr int kCounterWitnessLevels = 20;

void require_inside(const Fn1D& f, const Interval& iv) {
    if (!(f.domain.lo <= iv.lo && iv.hi <= f.domain.hi))
        throw Error(Errc::DomainViolation, "interval leaves the domain of " + f.name);
}

bool inside(const Fn1D& f, const RatInterval& iv) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const bool lo_ok = f.domain.lo == -inf || rat_from_double(f.domain.lo) <= iv.lo;
    const bool hi_ok = f.domain.hi == inf || iv.hi <= rat_from_double(f.domain.hi);
    return lo_ok && hi_ok;
}

void require_inside(const Fn1D& f, const RatInterval& iv) {
    if (!inside(f, iv))
        throw Error(Errc::DomainViolation, "interval leaves the domain of " + f.name);
}

bool inside(const Fn1D& f, const Interval& iv) {
    return f.domain.lo <= iv.lo && iv.hi <= f.domain.hi;
}

template <class S>
bool holds_with_slack(const S& margin, const S& rhs) {
    if constexpr (scalar_traits<S>::exact)
        return margin >= 0;
    else
        return margin >= -1e-12 * (1.0 + abs_of(rhs));
}

template <class S, class IV>
S end_delta(const Fn1D& f, const IV& iv) {
    if constexpr (scalar_traits<S>::exact)
        return S(eval_at_exact(f, iv.hi) - eval_at_exact(f, iv.lo));
    else
        return eval_at(f, iv.hi) - eval_at(f, iv.lo);
}

template <class S, class IV>
BisectionTrace<S> counter_trace(const Fn1D& f, const IV& iv, detail::BoundKind kind) {
    if constexpr (scalar_traits<S>::exact)
        return detail::bisect_trace_exact(f, iv, kind, kCounterWitnessLevels,
                                          HalvingRule::LeftFirst);
    else
        return detail::bisect_trace(f, iv, kind, kCounterWitnessLevels, HalvingRule::LeftFirst);
}

template <class S, class IV>
IneqReport<S> iaf_impl(const Fn1D& f, const IV& iv, const S& k) {
    if (k < 0) throw Error(Errc::NegativeK, "k must be >= 0");
    require_inside(f, iv);
    IneqReport<S> r;
    r.lhs = abs_of(end_delta<S>(f, iv));
    r.rhs = S(k * S(iv.hi - iv.lo));
    r.margin = S(r.rhs - r.lhs);
    r.holds = holds_with_slack(r.margin, r.rhs);
    if (!r.holds) r.counter_witness = counter_trace<S>(f, iv, detail::BoundKind::AbsFloor);
    return r;
}

template <class S, class IV>
IneqReport<S> iafprime_impl(const Fn1D& f, const IV& iv, const S& m, const S& big_m) {
    if (m > big_m) throw Error(Errc::BadBounds, "m must be <= M");
    require_inside(f, iv);
    const S delta = end_delta<S>(f, iv);
    const S width = S(iv.hi - iv.lo);
    // Lower side reads m*(b-a) <= delta, upper side delta <= M*(b-a).
    const S lo_lhs = S(m * width), lo_rhs = delta;
    const S hi_lhs = delta, hi_rhs = S(big_m * width);
    const S lo_margin = S(lo_rhs - lo_lhs);
    const S hi_margin = S(hi_rhs - hi_lhs);
    const bool lo_ok = holds_with_slack(lo_margin, lo_rhs);
    const bool hi_ok = holds_with_slack(hi_margin, hi_rhs);

    IneqReport<S> r;
    r.holds = lo_ok && hi_ok;
    const bool report_lower = !lo_ok || (hi_ok && lo_margin <= hi_margin);
    if (report_lower) {
        r.lhs = lo_lhs;
        r.rhs = lo_rhs;
        r.margin = lo_margin;
    } else {
        r.lhs = hi_lhs;
        r.rhs = hi_rhs;
        r.margin = hi_margin;
    }
    if (!lo_ok)
        r.counter_witness = counter_trace<S>(f, iv, detail::BoundKind::SignedCeil);
    else if (!hi_ok)
        r.counter_witness = counter_trace<S>(f, iv, detail::BoundKind::SignedFloor);
    return r;
}

template <class S, class IV>
IneqReport<S> iafg_impl(const Fn1D& f, const Fn1D& g, const IV& iv) {
    if (!inside(f, iv) || !inside(g, iv))
        throw Error(Errc::DomainMismatch, "both functions must contain the interval");
    IneqReport<S> r;
    r.lhs = abs_of(end_delta<S>(f, iv));
    r.rhs = end_delta<S>(g, iv);
    r.margin = S(r.rhs - r.lhs);
    r.holds = holds_with_slack(r.margin, r.rhs);
    // The certificate lives on f: its slope floor |delta_f|/(b-a) beats g's
    // mean slope. With delta_f = 0 the violation is entirely g's decrease
    // and no dichotomy on f exists.
    if (!r.holds && r.lhs > 0)
        r.counter_witness = counter_trace<S>(f, iv, detail::BoundKind::AbsFloor);
    return r;
}

template <class S, class IV>
IneqReport<S> maja_impl(const Fn1D& f, const IV& iv, const S& big_m) {
    require_inside(f, iv);
    IneqReport<S> r;
    r.lhs = end_delta<S>(f, iv);
    r.rhs = S(big_m * S(iv.hi - iv.lo));
    r.margin = S(r.rhs - r.lhs);
    r.holds = holds_with_slack(r.margin, r.rhs);
    if (!r.holds) r.counter_witness = counter_trace<S>(f, iv, detail::BoundKind::SignedFloor);
    return r;
}

} // namespace

IneqReport<double> check_iaf(const Fn1D& f, const Interval& iv, double k) {
    return iaf_impl<double>(f, iv, k);
}

IneqReport<Rat> check_iaf_exact(const Fn1D& f, const RatInterval& iv, const Rat& k) {
    return iaf_impl<Rat>(f, iv, k);
}

IneqReport<double> check_iafprime(const Fn1D& f, const Interval& iv, double m, double M) {
    return iafprime_impl<double>(f, iv, m, M);
}

IneqReport<Rat> check_iafprime_exact(const Fn1D& f, const RatInterval& iv, const Rat& m,
                                     const Rat& M) {
    return iafprime_impl<Rat>(f, iv, m, M);
}

IneqReport<double> check_iafg(const Fn1D& f, const Fn1D& g, const Interval& iv) {
    return iafg_impl<double>(f, g, iv);
}

IneqReport<Rat> check_iafg_exact(const Fn1D& f, const Fn1D& g, const RatInterval& iv) {
    return iafg_impl<Rat>(f, g, iv);
}

IneqReport<double> check_maja(const Fn1D& f, const Interval& iv, double M) {
    return maja_impl<double>(f, iv, M);
}

IneqReport<Rat> check_maja_exact(const Fn1D& f, const RatInterval& iv, const Rat& M) {
    return maja_impl<Rat>(f, iv, M);
}

std::pair<Fn1D, Fn1D> reduce_iaf_to_iafprime(const Fn1D& f, double m, double M) {
    if (m > M) throw Error(Errc::BadBounds, "m must be <= M");
    Fn1D f1, f2;
    f1.domain = f.domain;
    f2.domain = f.domain;
    f1.name = f.name + " - " + fmt_double(m) + "*x";
    f2.name = fmt_double(M) + "*x - " + f.name;
    f1.eval_fn = [ev = f.eval_fn, m](double x) { return ev(x) - m * x; };
    f2.eval_fn = [ev = f.eval_fn, M](double x) { return M * x - ev(x); };
    if (f.has_deriv()) {
        f1.deriv_fn = [dv = f.deriv_fn, m](double x) { return dv(x) - m; };
        f2.deriv_fn = [dv = f.deriv_fn, M](double x) { return M - dv(x); };
    }
    if (f.has_exact()) {
        const Rat mr = rat_from_double(m), big = rat_from_double(M);
        f1.exact_eval_fn = [ev = f.exact_eval_fn, mr](const Rat& x) { return Rat(ev(x) - mr * x); };
        f2.exact_eval_fn = [ev = f.exact_eval_fn, big](const Rat& x) {
            return Rat(big * x - ev(x));
        };
        if (f.has_exact_deriv()) {
            f1.exact_deriv_fn = [dv = f.exact_deriv_fn, mr](const Rat& x) {
                return Rat(dv(x) - mr);
            };
            f2.exact_deriv_fn = [dv = f.exact_deriv_fn, big](const Rat& x) {
                return Rat(big - dv(x));
            };
        }
    }
    return {f1, f2};
}

std::pair<double, double> derivative_bound_estimate(const Fn1D& f, const Interval& iv, int grid) {
    if (grid < 2) throw Error(Errc::BadParam, "grid must be >= 2");
    if (!f.has_deriv()) throw Error(Errc::MissingDerivOracle, "no derivative oracle on " + f.name);
    require_inside(f, iv);
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (int i = 0; i < grid; ++i) {
        // Midpoint scheme: uniform and strictly interior, so one-sided
        // endpoint behaviour never contaminates the estimate.
        const double x = iv.lo + (iv.hi - iv.lo) * (i + 0.5) / grid;
        const double d = f.deriv_fn(x);
        mn = std::min(mn, d);
        mx = std::max(mx, d);
    }
    return {mn, mx};
}

} // namespace incr
