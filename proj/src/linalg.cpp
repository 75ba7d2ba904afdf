#include "petrisiegel/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "petrisiegel/errors.hpp"

namespace petrisiegel {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw PreconditionError("CMatrix: entry count does not match rows*cols");
    }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw PreconditionError("CMatrix: ragged initializer");
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::column(std::span<const cplx> v) {
    return CMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
}

CVector CMatrix::col(std::size_t c) const {
    CVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

CMatrix CMatrix::transpose() const {
    CMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

CMatrix CMatrix::adjoint() const {
    CMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
    return t;
}

CMatrix CMatrix::conj() const {
    CMatrix t = *this;
    for (auto& e : t.entries_) e = std::conj(e);
    return t;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("CMatrix +: shape mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("CMatrix -: shape mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& e : entries_) e *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw PreconditionError("CMatrix *: inner dimension mismatch");
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CVector operator*(const CMatrix& a, std::span<const cplx> x) {
    if (a.cols() != x.size()) throw PreconditionError("CMatrix * vector: size mismatch");
    CVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s{};
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double frobenius_norm(const CMatrix& m) {
    double s = 0.0;
    for (const auto& e : m.entries()) s += std::norm(e);
    return std::sqrt(s);
}

double norm1(const CMatrix& m) {
    double best = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r) s += std::abs(m(r, c));
        best = std::max(best, s);
    }
    return best;
}

double max_abs(const CMatrix& m) {
    double best = 0.0;
    for (const auto& e : m.entries()) best = std::max(best, std::abs(e));
    return best;
}

double vector_norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& e : v) s += std::norm(e);
    return std::sqrt(s);
}

double hadamard_bound(const CMatrix& m) {
    double h = 1.0;
    for (std::size_t r = 0; r < m.rows(); ++r) h *= vector_norm(m.row(r));
    return h;
}

CMatrix submatrix(const CMatrix& m, std::span<const std::size_t> rows,
                  std::span<const std::size_t> cols) {
    CMatrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= m.rows()) throw PreconditionError("submatrix: row index out of range");
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j] >= m.cols()) throw PreconditionError("submatrix: column index out of range");
            s(i, j) = m(rows[i], cols[j]);
        }
    }
    return s;
}

CMatrix drop_row_col(const CMatrix& m, std::size_t row, std::size_t col) {
    if (row >= m.rows() || col >= m.cols()) throw PreconditionError("drop_row_col: index out of range");
    CMatrix s(m.rows() - 1, m.cols() - 1);
    for (std::size_t r = 0, rr = 0; r < m.rows(); ++r) {
        if (r == row) continue;
        for (std::size_t c = 0, cc = 0; c < m.cols(); ++c) {
            if (c == col) continue;
            s(rr, cc++) = m(r, c);
        }
        ++rr;
    }
    return s;
}

LU::LU(const CMatrix& a) : n_(a.rows()), lu_(a), perm_(a.rows()) {
    if (!a.square()) throw PreconditionError("LU: matrix must be square");
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    std::vector<double> row_norm(n_);
    for (std::size_t r = 0; r < n_; ++r) row_norm[r] = vector_norm(a.row(r));

    min_rel_pivot_ = n_ == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t r = k + 1; r < n_; ++r) {
            const double v = std::abs(lu_(r, k));
            if (v > best) {
                best = v;
                p = r;
            }
        }
        if (p != k) {
            for (std::size_t c = 0; c < n_; ++c) std::swap(lu_(k, c), lu_(p, c));
            std::swap(perm_[k], perm_[p]);
            sign_ = -sign_;
        }
        const double scale = row_norm[perm_[k]];
        min_rel_pivot_ = std::min(min_rel_pivot_, scale > 0.0 ? best / scale : 0.0);
        if (best == 0.0) continue;
        const cplx pivot = lu_(k, k);
        for (std::size_t r = k + 1; r < n_; ++r) {
            const cplx f = lu_(r, k) / pivot;
            lu_(r, k) = f;
            if (f == cplx{}) continue;
            for (std::size_t c = k + 1; c < n_; ++c) lu_(r, c) -= f * lu_(k, c);
        }
    }
}

cplx LU::determinant() const {
    cplx d = static_cast<double>(sign_);
    for (std::size_t k = 0; k < n_; ++k) d *= lu_(k, k);
    return d;
}

void LU::require_regular() const {
    if (singular()) {
        throw DegenerateConfiguration("degenerate configuration: matrix is singular to tolerance",
                                      min_rel_pivot_);
    }
}

CVector LU::solve(std::span<const cplx> b) const {
    require_regular();
    if (b.size() != n_) throw PreconditionError("LU::solve: right-hand side size mismatch");
    CVector x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    for (std::size_t i = n_; i-- > 0;) {
        for (std::size_t j = i + 1; j < n_; ++j) x[i] -= lu_(i, j) * x[j];
        x[i] /= lu_(i, i);
    }
    return x;
}

CMatrix LU::solve(const CMatrix& b) const {
    if (b.rows() != n_) throw PreconditionError("LU::solve: right-hand side row mismatch");
    CMatrix x(n_, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        const CVector xc = solve(b.col(c));
        for (std::size_t r = 0; r < n_; ++r) x(r, c) = xc[r];
    }
    return x;
}

CVector LU::solve_adjoint(std::span<const cplx> b) const {
    // A = P^T L U  =>  A^H = U^H L^H P.
    require_regular();
    if (b.size() != n_) throw PreconditionError("LU::solve_adjoint: size mismatch");
    CVector w(b.begin(), b.end());
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < i; ++j) w[i] -= std::conj(lu_(j, i)) * w[j];
        w[i] /= std::conj(lu_(i, i));
    }
    for (std::size_t i = n_; i-- > 0;)
        for (std::size_t j = i + 1; j < n_; ++j) w[i] -= std::conj(lu_(j, i)) * w[j];
    CVector x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = w[i];
    return x;
}

CMatrix LU::inverse() const { return solve(CMatrix::identity(n_)); }

Determinant det(const CMatrix& m) {
    if (!m.square()) throw PreconditionError("det: matrix must be square");
    if (m.rows() == 0) return {1.0, 1.0};
    return {LU(m).determinant(), hadamard_bound(m)};
}

cplx signed_minor(const CMatrix& m, std::size_t row, std::size_t col) {
    if (!m.square()) throw PreconditionError("signed_minor: matrix must be square");
    if (m.rows() < 2) throw PreconditionError("signed_minor: size must be at least 2");
    if (row >= m.rows() || col >= m.cols()) throw PreconditionError("signed_minor: index out of range");
    const cplx d = det(drop_row_col(m, row, col)).value;
    return ((row + col) % 2 == 0) ? d : -d;
}

CMatrix solve(const CMatrix& a, const CMatrix& b) { return LU(a).solve(b); }
CMatrix inverse(const CMatrix& a) { return LU(a).inverse(); }

double condition_estimate(const CMatrix& a) { return condition_estimate(a, LU(a)); }

double condition_estimate(const CMatrix& a, const LU& lu) {
    const std::size_t n = a.rows();
    if (n == 0) return 1.0;
    if (lu.singular()) return std::numeric_limits<double>::infinity();

    auto l1 = [](const CVector& v) {
        double s = 0.0;
        for (const auto& e : v) s += std::abs(e);
        return s;
    };

    // Hager's iteration, complex variant (Higham, Alg. 4.1 style).
    CVector x(n, cplx{1.0 / static_cast<double>(n), 0.0});
    double est = 0.0;
    std::size_t last_j = n;
    for (int iter = 0; iter < 5; ++iter) {
        const CVector y = lu.solve(x);
        est = std::max(est, l1(y));
        CVector xi(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double m = std::abs(y[i]);
            xi[i] = m > 0.0 ? y[i] / m : cplx{1.0, 0.0};
        }
        const CVector z = lu.solve_adjoint(xi);
        std::size_t j = 0;
        double zmax = 0.0;
        cplx ztx{};
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(z[i]) > zmax) {
                zmax = std::abs(z[i]);
                j = i;
            }
            ztx += std::conj(z[i]) * x[i];
        }
        if (zmax <= ztx.real() || j == last_j) break;
        std::fill(x.begin(), x.end(), cplx{});
        x[j] = 1.0;
        last_j = j;
    }
    // Alternating test vector guards against the iteration's blind spots.
    CVector b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = 1.0 + (n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0);
        b[i] = (i % 2 == 0) ? mag : -mag;
    }
    est = std::max(est, 2.0 * l1(lu.solve(b)) / (3.0 * static_cast<double>(n)));
    return norm1(a) * est;
}

std::size_t numerical_rank(const CMatrix& m_in, double rel_tol, bool equilibrate) {
    CMatrix m = m_in;
    const std::size_t R = m.rows(), C = m.cols();
    if (equilibrate) {
        for (std::size_t r = 0; r < R; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < C; ++c) s = std::max(s, std::abs(m(r, c)));
            if (s > 0.0)
                for (std::size_t c = 0; c < C; ++c) m(r, c) /= s;
        }
        for (std::size_t c = 0; c < C; ++c) {
            double s = 0.0;
            for (std::size_t r = 0; r < R; ++r) s = std::max(s, std::abs(m(r, c)));
            if (s > 0.0)
                for (std::size_t r = 0; r < R; ++r) m(r, c) /= s;
        }
    }
    const double scale = max_abs(m);
    if (scale == 0.0) return 0;
    const std::size_t steps = std::min(R, C);
    std::size_t rank = 0;
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t pr = k, pc = k;
        double best = -1.0;
        for (std::size_t r = k; r < R; ++r)
            for (std::size_t c = k; c < C; ++c)
                if (std::abs(m(r, c)) > best) {
                    best = std::abs(m(r, c));
                    pr = r;
                    pc = c;
                }
        if (best <= rel_tol * scale) break;
        ++rank;
        if (pr != k)
            for (std::size_t c = 0; c < C; ++c) std::swap(m(k, c), m(pr, c));
        if (pc != k)
            for (std::size_t r = 0; r < R; ++r) std::swap(m(r, k), m(r, pc));
        for (std::size_t r = k + 1; r < R; ++r) {
            const cplx f = m(r, k) / m(k, k);
            for (std::size_t c = k; c < C; ++c) m(r, c) -= f * m(k, c);
        }
    }
    return rank;
}

namespace {

DefinitenessCheck pivoted_ldl(const CMatrix& m_in, double rel_floor, bool semidefinite) {
    if (!m_in.square()) throw PreconditionError("definiteness check: matrix must be square");
    const std::size_t n = m_in.rows();
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = 0.5 * (m_in(i, j) + std::conj(m_in(j, i)));
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += std::abs(m(i, i).real());
    const double floor = rel_floor * trace;
    double min_pivot = std::numeric_limits<double>::infinity();
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && m(i, i).real() > best) {
                best = m(i, i).real();
                p = i;
            }
        min_pivot = std::min(min_pivot, best);
        if (semidefinite) {
            if (best < -floor) return {false, min_pivot, floor};
            if (best <= floor) {
                // Remaining block must vanish for a semidefinite matrix.
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        if (!done[i] && !done[j] && std::abs(m(i, j)) > 10.0 * std::max(floor, 1e-300))
                            return {false, min_pivot, floor};
                return {true, min_pivot, floor};
            }
        } else if (best <= floor) {
            return {false, min_pivot, floor};
        }
        done[p] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            const cplx f = m(i, p) / best;
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) m(i, j) -= f * m(p, j);
        }
    }
    return {true, n == 0 ? 0.0 : min_pivot, floor};
}

}  // namespace

DefinitenessCheck check_positive_definite(const CMatrix& m, double rel_floor) {
    return pivoted_ldl(m, rel_floor, false);
}

DefinitenessCheck check_positive_semidefinite(const CMatrix& m, double rel_floor) {
    return pivoted_ldl(m, rel_floor, true);
}

CMatrix cofactors(const CMatrix& m) {
    if (!m.square() || m.rows() < 2) throw PreconditionError("cofactors: need a square matrix of size >= 2");
    CMatrix c(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t k = 0; k < m.cols(); ++k) c(r, k) = signed_minor(m, r, k);
    return c;
}

double laplace_ratio(const CMatrix& m) {
    const CMatrix c = cofactors(m);
    const double d = std::abs(det(m).value);
    std::vector<double> terms(m.rows(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t k = 0; k < m.cols(); ++k) terms[r] += std::abs(m(r, k) * c(r, k));
    const double top = *std::max_element(terms.begin(), terms.end());
    if (top == 0.0) return 0.0;
    // rows whose expansion is pure rounding carry no information
    double bound = top;
    for (double t : terms)
        if (t >= kLaplaceRowFloor * top) bound = std::min(bound, t);
    return std::min(1.0, d / bound);
}

}  // namespace petrisiegel
