#pragma once

// Shared helpers for the test binaries: seeded generators and independent
// oracles (test-side Horner/derivative, central differences, the ternary
// digit map, boolean-matrix closure). Nothing here calls back into the
// code paths under test.

#include <cstdint>
#include <random>
#include <vector>

#include "incr/fn1d.hpp"
#include "incr/numeric.hpp"

namespace support {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

/// Random rational with numerator in [num_lo, num_hi] and denominator in
/// [1, den_hi].
inline incr::Rat rand_rat(std::mt19937_64& rng, long num_lo, long num_hi, long den_hi) {
    std::uniform_int_distribution<long> num(num_lo, num_hi);
    std::uniform_int_distribution<long> den(1, den_hi);
    return incr::Rat(num(rng), den(rng));
}

/// Random coefficient vector for a polynomial of exactly degree `deg`
/// (leading coefficient nonzero).
inline std::vector<incr::Rat> rand_poly_coeffs(std::mt19937_64& rng, int deg) {
    std::vector<incr::Rat> c;
    for (int i = 0; i <= deg; ++i) c.push_back(rand_rat(rng, -12, 12, 6));
    while (c.back() == 0) c.back() = rand_rat(rng, -12, 12, 6);
    return c;
}

template <class S>
S horner(const std::vector<incr::Rat>& coeffs, const S& x) {
    S acc{};
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        S term;
        if constexpr (std::is_same_v<S, double>)
            term = incr::to_double(coeffs[i]);
        else
            term = coeffs[i];
        acc = acc * x + term;
    }
    return acc;
}

inline std::vector<incr::Rat> deriv_coeffs(const std::vector<incr::Rat>& coeffs) {
    std::vector<incr::Rat> d;
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        d.push_back(coeffs[i] * static_cast<long>(i));
    if (d.empty()) d.push_back(incr::Rat(0));
    return d;
}

/// Symmetric difference quotient, the float-side derivative oracle.
inline double fd_deriv(const incr::Fn1D& f, double x, double h = 1e-6) {
    return (f.eval_fn(x + h) - f.eval_fn(x - h)) / (2.0 * h);
}

/**
 * Exact Cantor-function value at x = m / 3^k (terminating ternary) by the
 * digit map: copy digits 0/2 as 0/1 binary digits until the first 1, which
 * contributes 1/2^pos and ends the scan.
 */
inline incr::Rat cantor_digit_oracle(long m, int k) {
    incr::Rat value(0);
    incr::Rat weight(1, 2);
    long rest = m;
    long scale = 1;
    for (int i = 1; i < k; ++i) scale *= 3;
    for (int i = 0; i < k; ++i) {
        const long digit = rest / scale;
        rest -= digit * scale;
        scale /= 3;
        if (digit == 1) {
            value += weight;
            return value;
        }
        if (digit == 2) value += weight;
        weight /= 2;
    }
    return value;
}

/// Reflexive-transitive closure by repeated squaring of the edge relation.
inline std::vector<std::vector<bool>> closure(std::vector<std::vector<bool>> reach) {
    const std::size_t n = reach.size();
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;
    return reach;
}

} // namespace support
