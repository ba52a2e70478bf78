#include <cmath>
#include <limits>

#include "incr/cantor.hpp"
#include "incr/error.hpp"
#include "incr/fn1d.hpp"

namespace incr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_arity(const std::string& name, const std::vector<Rat>& params, std::size_t want) {
    if (params.size() != want)
        throw Error(Errc::BadArity, name + " expects " + std::to_string(want) +
                                        " parameter(s), got " + std::to_string(params.size()));
}

long require_integer(const std::string& name, const Rat& p, const char* which) {
    if (denominator(p) != 1)
        throw Error(Errc::BadParam, name + ": parameter " + which + " must be an integer");
    return numerator(p).convert_to<long>();
}

Fn1D make_poly(std::string name, std::vector<Rat> coeffs) {
    std::vector<double> fc(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) fc[i] = to_double(coeffs[i]);
    std::vector<Rat> dcoeffs;
    std::vector<double> fdc;
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        dcoeffs.push_back(coeffs[i] * static_cast<long>(i));
        fdc.push_back(to_double(dcoeffs.back()));
    }

    auto horner = [](const std::vector<double>& c, double x) {
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    };
    auto horner_exact = [](const std::vector<Rat>& c, const Rat& x) {
        Rat acc(0);
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    };

    Fn1D f;
    f.name = std::move(name);
    f.domain = Interval(-kInf, kInf);
    f.eval_fn = [fc, horner](double x) { return horner(fc, x); };
    f.deriv_fn = [fdc, horner](double x) { return horner(fdc, x); };
    f.exact_eval_fn = [coeffs, horner_exact](const Rat& x) { return horner_exact(coeffs, x); };
    f.exact_deriv_fn = [dcoeffs, horner_exact](const Rat& x) { return horner_exact(dcoeffs, x); };
    return f;
}

Fn1D make_fpq(long p, long q) {
    Fn1D f;
    f.name = "fpq(" + std::to_string(p) + "," + std::to_string(q) + ")";
    f.domain = Interval(-kInf, kInf);
    f.eval_fn = [p, q](double x) {
        if (x == 0.0) return 0.0;
        return std::pow(x, static_cast<double>(p)) * std::sin(1.0 / std::pow(x, static_cast<double>(q)));
    };
    // f'(x) = p x^(p-1) sin(x^-q) - q x^(p-q-1) cos(x^-q); f'(0) = 0 for p >= 2,
    // undefined at 0 for p = 1.
    f.deriv_fn = [p, q](double x) {
        if (x == 0.0) {
            if (p >= 2) return 0.0;
            throw Error(Errc::DomainViolation, "derivative undefined at 0 for p = 1");
        }
        double u = std::pow(x, static_cast<double>(-q));
        return static_cast<double>(p) * std::pow(x, static_cast<double>(p - 1)) * std::sin(u) -
               static_cast<double>(q) * std::pow(x, static_cast<double>(p - q - 1)) * std::cos(u);
    };
    return f;
}

} // namespace

Fn1D catalog_lookup(const std::string& name, const std::vector<Rat>& params) {
    if (name == "identity") {
        require_arity(name, params, 0);
        Fn1D f = make_poly("identity", {Rat(0), Rat(1)});
        return f;
    }
    if (name == "affine") {
        require_arity(name, params, 2);
        Fn1D f = make_poly("affine(" + rat_to_string(params[0]) + "," + rat_to_string(params[1]) + ")",
                           {params[1], params[0]});
        return f;
    }
    if (name == "monomial") {
        require_arity(name, params, 1);
        long p = require_integer(name, params[0], "p");
        if (p < 0) throw Error(Errc::BadParam, "monomial: p must be >= 0");
        std::vector<Rat> coeffs(static_cast<std::size_t>(p) + 1, Rat(0));
        coeffs.back() = Rat(1);
        return make_poly("monomial(" + std::to_string(p) + ")", std::move(coeffs));
    }
    if (name == "poly") {
        if (params.empty())
            throw Error(Errc::BadArity, "poly expects at least one coefficient");
        std::string label = "poly(";
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (i) label += ",";
            label += rat_to_string(params[i]);
        }
        label += ")";
        return make_poly(std::move(label), params);
    }
    if (name == "sin") {
        require_arity(name, params, 0);
        Fn1D f;
        f.name = "sin";
        f.domain = Interval(-kInf, kInf);
        f.eval_fn = [](double x) { return std::sin(x); };
        f.deriv_fn = [](double x) { return std::cos(x); };
        return f;
    }
    if (name == "fpq") {
        require_arity(name, params, 2);
        long p = require_integer(name, params[0], "p");
        long q = require_integer(name, params[1], "q");
        if (p < 1)
            throw Error(Errc::BadParam, "fpq: p < 1 rejected, derivative at 0 undefined");
        if (q < 1) throw Error(Errc::BadParam, "fpq: q must be >= 1");
        return make_fpq(p, q);
    }
    if (name == "cantor") {
        require_arity(name, params, 1);
        long n = require_integer(name, params[0], "n");
        if (n < 0 || n > kMaxStaircaseLevel)
            throw Error(Errc::BadParam, "cantor: level must be in [0, 30]");
        Fn1D f;
        f.name = "cantor(" + std::to_string(n) + ")";
        f.domain = Interval(0.0, 1.0);
        int level = static_cast<int>(n);
        f.eval_fn = [level](double x) { return staircase_eval(level, x); };
        f.exact_eval_fn = [level](const Rat& x) { return staircase_eval_exact(level, x); };
        return f;
    }
    throw Error(Errc::UnknownName, "no catalog entry named '" + name + "'");
}

} // namespace incr
