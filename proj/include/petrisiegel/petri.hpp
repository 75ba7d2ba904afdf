#pragma once

#include <string>
#include <utility>
#include <vector>

#include "petrisiegel/curves.hpp"
#include "petrisiegel/linalg.hpp"
#include "petrisiegel/sym_index.hpp"

namespace petrisiegel {

/// Values of a basis omega_1..omega_g at base points p_1..p_g and probe
/// points q_1..q_{2g-2}. Columns are points: omega_p(i, j) = omega_i(p_j).
struct RelationInput {
    CMatrix omega_p;  ///< g x g
    CMatrix omega_q;  ///< g x (2g - 2)
    double p_condition = 0.0;

    std::size_t genus() const { return omega_p.rows(); }
    std::size_t probes() const { return omega_q.cols(); }
};

/// Evaluates omega at the points and checks det omega(p) is non-singular.
RelationInput make_relation_input(const DifferentialBasis& omega, std::span<const CurvePoint> p,
                                  std::span<const CurvePoint> q);
RelationInput make_relation_input(CMatrix omega_p, CMatrix omega_q);

/// Relation label (k, l), 0-based, with 2 <= k < l < g.
struct RelationLabel {
    std::size_t k;
    std::size_t l;
    std::string str() const;  ///< 1-based "(k,l)"
    auto operator<=>(const RelationLabel&) const = default;
};

/// All (g-2)(g-3)/2 labels in lexicographic order.
std::vector<RelationLabel> relation_labels(std::size_t g);

/// a[r](i, j) = det omega(p | slot i -> q_r) * det omega(p | slot j -> q_r).
std::vector<CMatrix> a_tensor(const RelationInput& in);

/// D(m, i) = (-1)^(m+i) det of [omega_j(p_i)] with row m and column i removed.
CMatrix d_minors(const RelationInput& in);

/// Column labels of A(k,l): (1,2)..(1,g), (2,3)..(2,g), (k,l).
std::vector<std::pair<std::size_t, std::size_t>> a_columns(std::size_t g, RelationLabel label);

/// The (2g-2) x (2g-2) matrix A(k,l) with rows r and the columns above.
CMatrix build_A(const RelationInput& in, RelationLabel label);
CMatrix build_A(const std::vector<CMatrix>& a, std::size_t g, RelationLabel label);

/// A(k,l) with row r replaced by (D_{m i} D_{n j}) over the column labels (m, n).
CMatrix build_A_ij(const RelationInput& in, std::size_t r, RelationLabel label, std::size_t i, std::size_t j);

struct LabelResidual {
    RelationLabel label;
    double ratio;           ///< laplace_ratio(A(k,l)); the pass/fail quantity
    double hadamard_ratio;  ///< |det| / Hadamard bound, reported alongside
};

struct Theorem1Report {
    std::vector<LabelResidual> residuals;
    double max_ratio = 0.0;
    double tolerance = 1e-8;
    bool pass = false;
};

Theorem1Report verify_theorem1(const RelationInput& in, double tol = 1e-8, unsigned threads = 1);

struct BlockCheck {
    double ratio;               ///< laplace_ratio of the (N+1) x (N+1) matrix
    double hadamard_ratio;
    double identity_deviation;  ///< max |upper-left - I|
    double zero_deviation;      ///< max |upper-right|
    double lower_right_deviation;  ///< relative max deviation from det(omega(p))^-2 A(k,l)
};

/// Rows: points p_1..p_g, q_1..q_{2g-2}; columns: v_1..v_N, sigma_k sigma_l.
CMatrix block_matrix(const RelationInput& in, RelationLabel label);
BlockCheck verify_block_singular(const RelationInput& in, RelationLabel label);

struct RelationCoefficients {
    RelationLabel label;
    std::size_t r;
    CMatrix c;    ///< symmetrised
    CMatrix raw;  ///< before symmetrisation
    double delta_ratio;  ///< |Delta_{r, last}| / largest |cofactor| of A(k,l)
};

/// c_ij = det A_ij,r(k,l) / Delta_{r, last}, by cofactor expansion along row r.
/// Throws DegenerateConfiguration when Delta vanishes to tolerance.
RelationCoefficients relation_coefficients(const RelationInput& in, std::size_t r, RelationLabel label);

/// |sum c_ij w_i w_j| / sum |c_ij w_i w_j|.
double relation_residual(const CMatrix& c, std::span<const cplx> w);

/// Largest relative deviation between two coefficient arrays.
double coefficient_deviation(const CMatrix& a, const CMatrix& b);

/// Flattening through the pair index: entry k is (2 - delta) c_{1_k 2_k}.
CVector flatten_relation(const CMatrix& c, const PairIndexMap& map);

struct RelationSet {
    std::size_t genus = 0;
    std::size_t r = 0;
    std::vector<RelationLabel> labels;
    std::vector<RelationCoefficients> relations;
    std::size_t rank = 0;
    /// Labels whose flattened coefficients fall in the span of the earlier ones.
    std::vector<RelationLabel> deficient;
};

/// Copy of the input with the largest-modulus probe value omega_i(q_r)
/// multiplied by (1 + rel). Used as the detector's negative control.
RelationInput perturb_probe_value(const RelationInput& in, double rel);

RelationSet build_relation_set(const RelationInput& in, std::size_t r = 0, unsigned threads = 1);

}  // namespace petrisiegel
