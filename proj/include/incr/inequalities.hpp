#pragma once

#include <optional>
#include <utility>

#include "incr/fn1d.hpp"
#include "incr/interval.hpp"
#include "incr/witness.hpp"

namespace incr {

/**
 * Outcome of one endpoint-inequality check. `holds` is decided by
 * margin >= -slack*(1+|rhs|) with slack 1e-12 in float mode and 0 in exact
 * mode. For failed checks a dichotomy counter-witness is attached when a
 * meaningful certificate exists.
 */
template <class S>
struct IneqReport {
    bool holds = false;
    S lhs{};
    S rhs{};
    S margin{};
    std::optional<BisectionTrace<S>> counter_witness;
};

/// |f(hi)-f(lo)| <= k*(hi-lo). NegativeK when k < 0. On violation the
/// counter-witness traps a point with |slope| >= |increment|/(hi-lo) > k.
IneqReport<double> check_iaf(const Fn1D& f, const Interval& iv, double k);
IneqReport<Rat> check_iaf_exact(const Fn1D& f, const RatInterval& iv, const Rat& k);

/// m*(hi-lo) <= f(hi)-f(lo) <= M*(hi-lo). BadBounds when m > M. The report
/// carries the binding side; the counter-witness certifies a slope beyond
/// the violated bound.
IneqReport<double> check_iafprime(const Fn1D& f, const Interval& iv, double m, double M);
IneqReport<Rat> check_iafprime_exact(const Fn1D& f, const RatInterval& iv, const Rat& m,
                                     const Rat& M);

/// |f(hi)-f(lo)| <= g(hi)-g(lo). DomainMismatch when either function's
/// domain does not contain iv.
IneqReport<double> check_iafg(const Fn1D& f, const Fn1D& g, const Interval& iv);
IneqReport<Rat> check_iafg_exact(const Fn1D& f, const Fn1D& g, const RatInterval& iv);

/// One-sided bound f(hi)-f(lo) <= M*(hi-lo), no absolute value.
IneqReport<double> check_maja(const Fn1D& f, const Interval& iv, double M);
IneqReport<Rat> check_maja_exact(const Fn1D& f, const RatInterval& iv, const Rat& M);

/**
 * The shift reduction between the absolute and two-sided bounds:
 * f1 = f - m*id and f2 = M*id - f, with derivative and exact oracles
 * composed when f carries them. Under the premise m <= f' <= M both
 * results have derivative in [0, M-m]. BadBounds when m > M.
 */
std::pair<Fn1D, Fn1D> reduce_iaf_to_iafprime(const Fn1D& f, double m, double M);

/// (min, max) of the derivative oracle over a uniform interior grid of
/// `grid` points (endpoints excluded). MissingDerivOracle without an oracle;
/// BadParam when grid < 2. A sampled estimate, not a certified bound.
std::pair<double, double> derivative_bound_estimate(const Fn1D& f, const Interval& iv, int grid);

} // namespace incr
