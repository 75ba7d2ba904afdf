#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "petrisiegel/linalg.hpp"
#include "petrisiegel/random.hpp"

namespace testutil {

using namespace petrisiegel;

inline CMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
    CMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.complex_normal();
    return m;
}

inline CVector random_vector(Rng& rng, std::size_t n) {
    CVector v(n);
    for (auto& x : v) x = rng.complex_normal();
    return v;
}

inline CMatrix random_symmetric(Rng& rng, std::size_t n) {
    CMatrix m = random_matrix(rng, n, n);
    return 0.5 * (m + m.transpose());
}

/// Real symmetric positive definite: B B^T + n I with B real.
inline CMatrix random_spd(Rng& rng, std::size_t n) {
    CMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = rng.normal();
    CMatrix m = b * b.transpose();
    for (std::size_t i = 0; i < n; ++i) m(i, i) += static_cast<double>(n);
    return m;
}

/// Cofactor expansion along the first row; the reference determinant.
inline cplx cofactor_det(const CMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    cplx s{};
    for (std::size_t j = 0; j < n; ++j) {
        const cplx sub = cofactor_det(drop_row_col(m, 0, j));
        s += (j % 2 == 0 ? 1.0 : -1.0) * m(0, j) * sub;
    }
    return s;
}

inline double rel(cplx a, cplx b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double rel_matrix(const CMatrix& a, const CMatrix& b) {
    const double s = std::max(frobenius_norm(a), frobenius_norm(b));
    return s == 0.0 ? 0.0 : frobenius_norm(a - b) / s;
}

}  // namespace testutil
