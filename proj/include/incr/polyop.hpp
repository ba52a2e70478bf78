#pragma once

#include <optional>
#include <vector>

#include "incr/numeric.hpp"

namespace incr {

/// Polynomial with exact rational coefficients, coeffs[i] the coefficient
/// of x^i. Always nonempty; trailing zeros are allowed and ignored by deg.
struct Poly {
    std::vector<Rat> coeffs{Rat(0)};

    /// Degree ignoring trailing zeros; -1 for the zero polynomial.
    int deg() const;
    Rat eval(const Rat& x) const;
    bool operator==(const Poly& other) const; // equal as polynomials
};

Poly poly_derivative(const Poly& p);

/// Matrix of the derivative operator on R_n[x] in the monomial basis
/// {1, x, ..., x^n}: (n+1)x(n+1), row-major, entry (j-1, j) = j.
std::vector<std::vector<Rat>> d_matrix(int n);

/// Rank by exact Gaussian elimination.
int matrix_rank(std::vector<std::vector<Rat>> m);

/// Basis of the kernel of the derivative operator on R_n[x], computed by
/// elimination on d_matrix(n): exactly the constants.
std::vector<Poly> kernel_basis(int n);

struct PrimitiveResult {
    bool has = false;
    std::optional<Poly> primitive; // zero constant term when present
};

/// Whether p has an antiderivative inside R_n[x]. DegreeExceedsSpace when
/// deg p > n. False exactly when the x^n coefficient of p is nonzero.
PrimitiveResult has_primitive(const Poly& p, int n);

} // namespace incr
