#pragma once

#include <functional>
#include <string>
#include <vector>

#include "incr/interval.hpp"
#include "incr/numeric.hpp"

namespace incr {

/**
 * A real function of one variable, carried as evaluation oracles.
 *
 *  - eval_fn is total on `domain` and deterministic (same input, same bits).
 *  - deriv_fn is optional: present only when a derivative oracle exists.
 *  - exact_eval_fn / exact_deriv_fn mirror the pair over exact rationals and
 *    are present only for functions closed under rational arithmetic
 *    (polynomials, rational functions, staircase levels, abs).
 *
 * Instances are immutable after construction; all operations take them by
 * const reference and may evaluate concurrently.
 */
struct Fn1D {
    std::string name;
    Interval domain{0.0, 1.0};
    std::function<double(double)> eval_fn;
    std::function<double(double)> deriv_fn;
    std::function<Rat(const Rat&)> exact_eval_fn;
    std::function<Rat(const Rat&)> exact_deriv_fn;

    bool has_deriv() const { return static_cast<bool>(deriv_fn); }
    bool has_exact() const { return static_cast<bool>(exact_eval_fn); }
    bool has_exact_deriv() const { return static_cast<bool>(exact_deriv_fn); }
};

/// Domain-checked evaluation; DomainViolation outside [domain.lo, domain.hi].
double eval_at(const Fn1D& f, double x);

/// Domain-checked derivative; MissingDerivOracle when no oracle is attached.
double deriv_at(const Fn1D& f, double x);

/// Exact-rational counterparts; MissingExactOracle when unavailable.
Rat eval_at_exact(const Fn1D& f, const Rat& x);
Rat deriv_at_exact(const Fn1D& f, const Rat& x);

/// One function viewed over a single scalar type; the shape the generic
/// witness/slope cores consume. Built by as_scalar_fn<S>.
template <class S>
struct ScalarFn {
    std::function<S(const S&)> eval;
    std::function<S(const S&)> deriv; // empty when absent
    bool has_deriv() const { return static_cast<bool>(deriv); }
};

template <class S>
ScalarFn<S> as_scalar_fn(const Fn1D& f);

template <>
ScalarFn<double> as_scalar_fn<double>(const Fn1D& f);

template <>
ScalarFn<Rat> as_scalar_fn<Rat>(const Fn1D& f);

/**
 * Looks up a catalog function by name with rational parameters.
 *
 * Entries: identity; affine(m,c); monomial(p); poly(c0,...,cn); sin;
 * fpq(p,q) = x^p*sin(1/x^q) with f(0)=0; cantor(n) = staircase level n.
 *
 * Errors: UnknownName; BadArity on wrong parameter count; BadParam on
 * out-of-range parameters (fpq requires integers p >= 1, q >= 1 -- the
 * derivative at 0 is undefined for p < 1 -- monomial requires integer
 * p >= 0, cantor requires integer 0 <= n <= 30).
 */
Fn1D catalog_lookup(const std::string& name, const std::vector<Rat>& params = {});

} // namespace incr
