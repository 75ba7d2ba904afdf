#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace petrisiegel {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense row-major complex matrix. Sizes in this project stay below ~30, so
/// everything is plain value semantics without expression templates.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(std::span<const cplx> d);
    static CMatrix column(std::span<const cplx> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return entries_.empty(); }

    cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<cplx> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
    std::span<const cplx> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
    CVector col(std::size_t c) const;

    const std::vector<cplx>& entries() const { return entries_; }

    CMatrix transpose() const;
    CMatrix adjoint() const;
    CMatrix conj() const;

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CVector operator*(const CMatrix& a, std::span<const cplx> x);

double frobenius_norm(const CMatrix& m);
double norm1(const CMatrix& m);
double max_abs(const CMatrix& m);
double vector_norm(std::span<const cplx> v);

/// Product of the Euclidean row norms: the natural scale for |det|.
double hadamard_bound(const CMatrix& m);

/// Matrix with the given rows and columns, in the order given.
CMatrix submatrix(const CMatrix& m, std::span<const std::size_t> rows,
                  std::span<const std::size_t> cols);
CMatrix drop_row_col(const CMatrix& m, std::size_t row, std::size_t col);

struct Determinant {
    cplx value;
    double hadamard;  ///< Hadamard bound of the input; |value| <= hadamard.

    /// |det| / Hadamard bound, in [0, 1]. Zero for an all-zero row.
    double ratio() const { return hadamard > 0.0 ? std::abs(value) / hadamard : 0.0; }
};

Determinant det(const CMatrix& m);

/// (-1)^(row+col) det(m with row and col removed). Indices are 0-based, which
/// leaves the sign identical to the 1-based convention.
cplx signed_minor(const CMatrix& m, std::size_t row, std::size_t col);

/// Matrix of signed minors C_rc.
CMatrix cofactors(const CMatrix& m);

/// |det m| / min_r sum_c |m_rc C_rc|. Each row expansion bounds |det m|, so
/// the ratio lies between the Hadamard ratio and 1, and unlike the Hadamard
/// ratio it does not change under row or column scaling. Rows whose expansion
/// terms sum to less than kLaplaceRowFloor times the largest row sum are skipped.
inline constexpr double kLaplaceRowFloor = 1e-8;
double laplace_ratio(const CMatrix& m);

/// LU factorization with partial pivoting, P A = L U.
class LU {
public:
    /// Relative pivot floor: |pivot| < kSingularThreshold * ||row||_2 is singular.
    static constexpr double kSingularThreshold = 1e-13;

    explicit LU(const CMatrix& a);

    std::size_t size() const { return n_; }
    cplx determinant() const;
    /// Smallest |pivot| / ||original pivot row||_2 encountered.
    double min_relative_pivot() const { return min_rel_pivot_; }
    bool singular() const { return min_rel_pivot_ < kSingularThreshold; }

    /// Solves A x = b; throws DegenerateConfiguration when singular().
    CMatrix solve(const CMatrix& b) const;
    CVector solve(std::span<const cplx> b) const;
    /// Solves A^H x = b.
    CVector solve_adjoint(std::span<const cplx> b) const;
    CMatrix inverse() const;

private:
    void require_regular() const;

    std::size_t n_;
    CMatrix lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
    double min_rel_pivot_ = 0.0;
};

CMatrix solve(const CMatrix& a, const CMatrix& b);
CMatrix inverse(const CMatrix& a);

/// Estimate of the 1-norm condition number ||A||_1 ||A^-1||_1 using the
/// Hager/Higham block-free estimator (a handful of solves, no explicit inverse).
double condition_estimate(const CMatrix& a);
double condition_estimate(const CMatrix& a, const LU& lu);

/// Rank by Gaussian elimination with complete pivoting: pivots below
/// rel_tol * (largest entry) are treated as zero. Rows and columns are scaled
/// to unit max-norm first when `equilibrate` is set.
std::size_t numerical_rank(const CMatrix& m, double rel_tol, bool equilibrate = true);

struct DefinitenessCheck {
    bool positive_definite;
    double min_pivot;  ///< Smallest pivot of the symmetric elimination.
    double floor;      ///< Threshold used (rel_floor * trace).
};

/// Hermitian positive-definiteness via diagonally pivoted LDL^H elimination.
/// Only the Hermitian part of `m` is used.
DefinitenessCheck check_positive_definite(const CMatrix& m, double rel_floor = 1e-12);

/// Same check with a floor that admits zero pivots down to -rel_floor * trace.
DefinitenessCheck check_positive_semidefinite(const CMatrix& m, double rel_floor = 1e-10);

}  // namespace petrisiegel
