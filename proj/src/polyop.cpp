#include "incr/polyop.hpp"

#include <cstddef>

#include "incr/error.hpp"

namespace incr {

int Poly::deg() const {
    for (std::size_t i = coeffs.size(); i > 0; --i)
        if (coeffs[i - 1] != 0) return static_cast<int>(i - 1);
    return -1;
}

Rat Poly::eval(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = coeffs.size(); i > 0; --i) acc = Rat(acc * x + coeffs[i - 1]);
    return acc;
}

bool Poly::operator==(const Poly& other) const {
    const std::size_t n = std::max(coeffs.size(), other.coeffs.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Rat a = i < coeffs.size() ? coeffs[i] : Rat(0);
        const Rat b = i < other.coeffs.size() ? other.coeffs[i] : Rat(0);
        if (a != b) return false;
    }
    return true;
}

Poly poly_derivative(const Poly& p) {
    Poly q;
    if (p.coeffs.size() <= 1) return q;
    q.coeffs.assign(p.coeffs.size() - 1, Rat(0));
    for (std::size_t i = 1; i < p.coeffs.size(); ++i)
        q.coeffs[i - 1] = Rat(p.coeffs[i] * static_cast<int>(i));
    return q;
}

std::vector<std::vector<Rat>> d_matrix(int n) {
    if (n < 1) throw Error(Errc::BadParam, "n must be >= 1");
    const std::size_t dim = static_cast<std::size_t>(n) + 1;
    std::vector<std::vector<Rat>> m(dim, std::vector<Rat>(dim, Rat(0)));
    // Column j is the image of x^j, namely j*x^(j-1).
    for (std::size_t j = 1; j < dim; ++j) m[j - 1][j] = Rat(static_cast<int>(j));
    return m;
}

int matrix_rank(std::vector<std::vector<Rat>> m) {
    if (m.empty() || m[0].empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[row], m[piv]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rat factor = Rat(m[r][col] / m[row][col]);
            for (std::size_t c = col; c < cols; ++c) m[r][c] = Rat(m[r][c] - factor * m[row][c]);
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<Poly> kernel_basis(int n) {
    if (n < 1) throw Error(Errc::BadParam, "n must be >= 1");
    auto m = d_matrix(n);
    const std::size_t dim = m.size();
    std::vector<int> pivot_row_of_col(dim, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < dim && row < dim; ++col) {
        std::size_t piv = row;
        while (piv < dim && m[piv][col] == 0) ++piv;
        if (piv == dim) continue;
        std::swap(m[row], m[piv]);
        const Rat lead = m[row][col];
        for (auto& v : m[row]) v = Rat(v / lead);
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rat factor = m[r][col];
            for (std::size_t c = 0; c < dim; ++c) m[r][c] = Rat(m[r][c] - factor * m[row][c]);
        }
        pivot_row_of_col[col] = static_cast<int>(row);
        ++row;
    }
    std::vector<Poly> basis;
    for (std::size_t col = 0; col < dim; ++col) {
        if (pivot_row_of_col[col] >= 0) continue;
        Poly q;
        q.coeffs.assign(dim, Rat(0));
        q.coeffs[col] = Rat(1);
        for (std::size_t c = 0; c < dim; ++c)
            if (pivot_row_of_col[c] >= 0)
                q.coeffs[c] = Rat(-m[static_cast<std::size_t>(pivot_row_of_col[c])][col]);
        basis.push_back(q);
    }
    return basis;
}

PrimitiveResult has_primitive(const Poly& p, int n) {
    if (n < 1) throw Error(Errc::BadParam, "n must be >= 1");
    const int d = p.deg();
    if (d > n) throw Error(Errc::DegreeExceedsSpace, "deg p exceeds the ambient space");
    PrimitiveResult out;
    if (d == n) return out; // x^n coordinate nonzero: no primitive in R_n[x]
    out.has = true;
    Poly q;
    q.coeffs.assign(static_cast<std::size_t>(d) + 2, Rat(0));
    for (int i = 0; i <= d; ++i)
        q.coeffs[static_cast<std::size_t>(i) + 1] =
            Rat(p.coeffs[static_cast<std::size_t>(i)] / (i + 1));
    out.primitive = q;
    return out;
}

} // namespace incr
