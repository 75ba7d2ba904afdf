#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "petrisiegel/linalg.hpp"
#include "petrisiegel/random.hpp"
#include "petrisiegel/sym_index.hpp"

namespace petrisiegel {

/// Z in the Siegel upper half-space: Z = Z^T, Y = Im Z positive definite.
class SiegelPoint {
public:
    explicit SiegelPoint(CMatrix z);

    std::size_t genus() const { return z_.rows(); }
    const CMatrix& Z() const { return z_; }
    const CMatrix& Y() const { return y_; }
    const CMatrix& Y_inv() const { return y_inv_; }
    /// Upper-triangular T with Y = T^T T (real Cholesky factor).
    const CMatrix& cholesky() const { return chol_; }

private:
    CMatrix z_, y_, y_inv_, chol_;
};

/// Random point with Re Z symmetric in [-1/2, 1/2] and Y = B B^T + c I.
SiegelPoint random_siegel_point(std::size_t g, Rng& rng, double y_shift = 1.0);

/// Integer 2g x 2g matrix [[A, B], [C, D]].
class SymplecticElement {
public:
    SymplecticElement(std::size_t g, std::vector<long long> entries);

    static SymplecticElement identity(std::size_t g);
    /// [[I, S], [0, I]] for integer symmetric S.
    static SymplecticElement shear(std::size_t g, const std::vector<long long>& s);
    /// [[0, -I], [I, 0]].
    static SymplecticElement inversion(std::size_t g);
    /// [[U, 0], [0, U^-T]] with U = I + t E_ij (i != j).
    static SymplecticElement elementary(std::size_t g, std::size_t i, std::size_t j, long long t);
    /// Product of random shears, elementary moves and inversions.
    static SymplecticElement random(std::size_t g, Rng& rng, int factors = 6);

    std::size_t genus() const { return g_; }
    long long operator()(std::size_t r, std::size_t c) const { return m_[r * 2 * g_ + c]; }

    CMatrix A() const { return block(0, 0); }
    CMatrix B() const { return block(0, 1); }
    CMatrix C() const { return block(1, 0); }
    CMatrix D() const { return block(1, 1); }

    /// M^T J M == J in exact integer arithmetic.
    bool is_symplectic() const;

    SymplecticElement operator*(const SymplecticElement& o) const;

private:
    CMatrix block(std::size_t br, std::size_t bc) const;
    std::size_t g_;
    std::vector<long long> m_;
};

struct ModularResult {
    SiegelPoint tau;
    CMatrix cocycle;  ///< (C tau + D)^T, the transport factor for omega
    CMatrix ctd;      ///< C tau + D
};

/// (A tau + B)(C tau + D)^-1; throws if the image fails the Siegel invariants.
ModularResult modular_transform(const SiegelPoint& tau, const SymplecticElement& m);

/// g_ij = (2 - delta_{1_i 2_i}) (Y^-1 Y^-1)_ij.
CMatrix siegel_metric(const CMatrix& y, const PairIndexMap& map);

/// sum_ij g_ij dZ_i conj(dZ_j) with dZ_i = dZ_{1_i 2_i}.
cplx metric_form(const CMatrix& metric, const CMatrix& dz, const PairIndexMap& map);

/// Tr(Y^-1 dZ Y^-1 conj(dZ)).
cplx trace_form(const CMatrix& y, const CMatrix& dz);

/// det of sym_square(tau2^-1) restricted to rows x cols, times prod (2 - delta)
/// over the row pairs. Indices must be distinct; their order is respected, so
/// permuting the rows changes the sign.
cplx volume_minor(const CMatrix& tau2, const PairIndexMap& map, std::span<const std::size_t> rows,
                  std::span<const std::size_t> cols);

/// g^Xi = W diag(2 - delta) (tau2^-1 tau2^-1) W^H for W (N x M), W(j, i) = w_ji.
CMatrix induced_metric_xi(const CMatrix& w, const CMatrix& tau2, const PairIndexMap& map);

/// B(z, conj w) = u^T tau2^-1 conj(v).
cplx bergman_kernel(std::span<const cplx> u, std::span<const cplx> v, const CMatrix& tau2);

/// sum_kl (2 - delta_k) uu_k (tau2^-1 tau2^-1)_kl conj(vv_l); equals B^2.
cplx bergman_square_sum(std::span<const cplx> u, std::span<const cplx> v, const CMatrix& tau2,
                        const PairIndexMap& map);

struct DensityCheck {
    double metric_det;   ///< det siegel_metric(Y)
    double closed_form;  ///< 2^(M-g) / det(Y)^(g+1)
};

DensityCheck ambient_volume_density(const CMatrix& y, const PairIndexMap& map);

/// ||H - H^H|| / ||H||.
double hermiticity_defect(const CMatrix& h);

}  // namespace petrisiegel
