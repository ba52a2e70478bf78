#include "incr/fn1d.hpp"

#include "incr/error.hpp"

namespace incr {

namespace {

void check_domain(const Fn1D& f, double x) {
    if (!(f.domain.lo <= x && x <= f.domain.hi))
        throw Error(Errc::DomainViolation,
                    "x = " + fmt_double(x) + " outside domain of " + f.name);
}

} // namespace

double eval_at(const Fn1D& f, double x) {
    check_domain(f, x);
    return f.eval_fn(x);
}

double deriv_at(const Fn1D& f, double x) {
    if (!f.has_deriv())
        throw Error(Errc::MissingDerivOracle, "no derivative oracle on " + f.name);
    check_domain(f, x);
    return f.deriv_fn(x);
}

Rat eval_at_exact(const Fn1D& f, const Rat& x) {
    if (!f.has_exact())
        throw Error(Errc::MissingExactOracle, "no exact oracle on " + f.name);
    check_domain(f, to_double(x));
    return f.exact_eval_fn(x);
}

Rat deriv_at_exact(const Fn1D& f, const Rat& x) {
    if (!f.has_exact_deriv())
        throw Error(Errc::MissingExactOracle, "no exact derivative oracle on " + f.name);
    check_domain(f, to_double(x));
    return f.exact_deriv_fn(x);
}

template <>
ScalarFn<double> as_scalar_fn<double>(const Fn1D& f) {
    ScalarFn<double> out;
    out.eval = [f](const double& x) { return eval_at(f, x); };
    if (f.has_deriv())
        out.deriv = [f](const double& x) { return deriv_at(f, x); };
    return out;
}

template <>
ScalarFn<Rat> as_scalar_fn<Rat>(const Fn1D& f) {
    if (!f.has_exact())
        throw Error(Errc::MissingExactOracle,
                    f.name + " is not closed under rational arithmetic");
    ScalarFn<Rat> out;
    out.eval = [f](const Rat& x) { return eval_at_exact(f, x); };
    if (f.has_exact_deriv())
        out.deriv = [f](const Rat& x) { return deriv_at_exact(f, x); };
    return out;
}

} // namespace incr
