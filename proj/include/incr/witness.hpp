#pragma once

#include <optional>
#include <vector>

#include "incr/fn1d.hpp"
#include "incr/interval.hpp"

namespace incr {

enum class HalvingRule { LeftFirst, MaxDelta };
enum class Stationary { None, LeftStationary, RightStationary };

/**
 * Certificate produced by the dichotomy constructions: nested intervals
 * [a_n, b_n] with b_n - a_n = (b-a)/2^n whose endpoint increments keep a
 * guaranteed share of the total increment, so every recorded slope clears
 * the floor d/(b-a). Exact in rational mode; float mode carries a fixed
 * 1e-12 relative slack.
 *
 * Row n of the serialized form is (n, a_n, b_n, f(a_n), f(b_n), slope_n).
 */
template <class S>
struct BisectionTrace {
    std::vector<S> a_seq, b_seq, f_a, f_b, slopes;
    S d{};      // target increment: |f(b)-f(a)| (absolute rule) or signed
    S c{};      // final midpoint, the common-limit approximation
    int levels = 0;
    HalvingRule rule = HalvingRule::LeftFirst;
    Stationary stationary = Stationary::None;
    std::optional<S> deriv_at_c;      // when a derivative oracle exists
    std::optional<bool> deriv_floor_ok; // |deriv(c)| >= d/(b-a) - 1e-6*(1 + d/(b-a))
};

/**
 * Dichotomy witness for "non-constant forces a steep point": requires
 * f(a) != f(b) (EqualEndpointValues otherwise) and maintains
 * |f(b_n) - f(a_n)| >= d/2^n with d = |f(b)-f(a)|.
 *
 * LeftFirst keeps the left half whenever it already holds half the
 * increment; MaxDelta keeps the half with the larger |increment| (ties
 * left). Soundness of the chosen half is asserted at every level.
 * A side whose last 8 entries are bit-identical is flagged stationary.
 */
BisectionTrace<double> fcd_witness(const Fn1D& f, const Interval& iv, int levels,
                                   HalvingRule rule = HalvingRule::LeftFirst);
BisectionTrace<Rat> fcd_witness_exact(const Fn1D& f, const RatInterval& iv, int levels,
                                      HalvingRule rule = HalvingRule::LeftFirst);

enum class Orientation { Positive, Negative };

/**
 * Signed variant: with d = f(b) - f(a), Positive requires f(a) < f(b)
 * (WrongOrientation otherwise) and keeps f(b_n) - f(a_n) >= d/2^n, so every
 * slope >= d/(b-a) > 0; Negative mirrors with <=.
 */
BisectionTrace<double> lagrange_witness(const Fn1D& f, const Interval& iv, Orientation want,
                                        int levels, HalvingRule rule = HalvingRule::LeftFirst);
BisectionTrace<Rat> lagrange_witness_exact(const Fn1D& f, const RatInterval& iv, Orientation want,
                                           int levels, HalvingRule rule = HalvingRule::LeftFirst);

/**
 * Refutation-by-endpoints of the increment bound |f(b)-f(a)| <= k (b-a):
 * when the endpoints already violate it, returns the absolute dichotomy
 * trace, whose slope floor |f(b)-f(a)|/(b-a) exceeds k; empty optional when
 * the endpoints do not violate the bound (which is not a proof it holds).
 * NegativeK when k < 0.
 */
std::optional<BisectionTrace<double>> iaf_refute(const Fn1D& f, const Interval& iv, double k,
                                                 int levels);
std::optional<BisectionTrace<Rat>> iaf_refute_exact(const Fn1D& f, const RatInterval& iv,
                                                    const Rat& k, int levels);

/**
 * Greedy epsilon-chain: knots a = t_0 < t_1 < ... < t_m = b where each step
 * was accepted because slope(t_i, t_i+1) <= bound_m + epsilon. Steps start
 * at (b-a)/8 and halve on rejection; StepFloorReached (carrying the stuck
 * location) when no admissible step of at least min_step exists. Telescoping
 * the accepted steps certifies f(b) - f(a) <= (bound_m + epsilon)(b - a).
 */
struct EpsilonChain {
    std::vector<double> knots;
    double bound_m = 0.0;
    double epsilon = 0.0;
    std::vector<double> step_slopes;
};

EpsilonChain epsilon_chain(const Fn1D& f, const Interval& iv, double bound_m, double epsilon,
                           double min_step);

/**
 * Interior critical point by dense sampling plus ternary refinement.
 * Requires |f(lo) - f(hi)| <= 1e-12*(1+|f(lo)|) (EndpointsNotEqual), grid >= 3.
 * Constant-on-grid returns the midpoint. With a derivative oracle the result
 * is gated by |deriv(c)| <= 1e-6*(1 + max sampled |deriv|); a refinement that
 * fails the gate throws NoInteriorExtremum rather than returning a bad c.
 */
double rolle_witness(const Fn1D& f, const Interval& iv, int grid, int refine_levels);

/// Mean-value point via the auxiliary g(x) = f(x) - secant*(x - lo); asserts
/// |deriv(c) - secant| <= 1e-6*(1+|secant|) when a derivative oracle exists.
double mvt_witness(const Fn1D& f, const Interval& iv, int grid, int refine_levels);

/**
 * Intermediate-value point for the derivative: finds x with chord slope
 * P(lo, x) = v via sign-change bisection on the continuous chord-slope
 * function phi(x) = P(lo, x) (anchored at phi(lo) = deriv near lo), falling
 * back to tangency refinement and then to psi(x) = P(x, hi); then takes the
 * mean-value point of the bracketing interval. TargetNotBracketed when v is
 * out of reach of both chord-slope functions.
 */
double darboux_witness(const Fn1D& f, const Interval& iv, double v, int bisect_levels);

} // namespace incr
