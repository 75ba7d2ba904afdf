#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "petrisiegel/linalg.hpp"
#include "petrisiegel/sym_index.hpp"

namespace petrisiegel {

/// Smooth affine plane curve F(x, y) = 0 of degree d >= 4, genus (d-1)(d-2)/2.
class PlaneCurve {
public:
    struct Term {
        int x_power;
        int y_power;
        cplx coeff;
    };

    PlaneCurve(int degree, std::vector<Term> terms);

    /// x^d + y^d + 1 = 0.
    static PlaneCurve fermat(int degree);

    int degree() const { return degree_; }
    std::size_t genus() const { return static_cast<std::size_t>((degree_ - 1) * (degree_ - 2) / 2); }
    const std::vector<Term>& terms() const { return terms_; }

    cplx F(cplx x, cplx y) const;
    cplx Fx(cplx x, cplx y) const;
    cplx Fy(cplx x, cplx y) const;

    /// Largest |coefficient|; the scale for on-curve residuals.
    double coefficient_scale() const { return scale_; }
    /// |F(x,y)| normalised by the sum of |term| values at the point.
    double relative_residual(cplx x, cplx y) const;

    /// Coefficients of F(x, .) as a polynomial in y, ascending powers.
    CVector y_polynomial(cplx x) const;
    /// Coefficient of y^d; non-zero is required for the n >= 2 bases.
    cplx leading_y_coeff() const;

private:
    int degree_;
    std::vector<Term> terms_;
    double scale_ = 0.0;
};

/// y^2 = prod_k (x - e_k) with 2g+1 distinct branch points. Branch points are
/// real and strictly increasing, except that genus 1 also accepts complex ones.
class HyperellipticCurve {
public:
    explicit HyperellipticCurve(std::vector<cplx> branch_points, double min_separation = 1e-3);
    static HyperellipticCurve real(const std::vector<double>& branch_points, double min_separation = 1e-3);

    std::size_t genus() const { return (branch_points_.size() - 1) / 2; }
    const std::vector<cplx>& branch_points() const { return branch_points_; }
    bool has_real_branch_points() const { return real_; }

    cplx f(cplx x) const;
    /// Distance from x to the nearest branch point.
    double branch_distance(cplx x) const;

private:
    std::vector<cplx> branch_points_;
    bool real_ = true;
};

using CurveModel = std::variant<PlaneCurve, HyperellipticCurve>;

std::size_t genus_of(const CurveModel& model);
std::string describe(const CurveModel& model);

/// Which coordinate differential the stored values are coefficients of.
enum class Chart { X, Y };

struct CurvePoint {
    cplx x;
    cplx y;
    Chart chart = Chart::X;
};

/// Relative on-curve tolerance used by every evaluator.
inline constexpr double kOnCurveTolerance = 1e-10;

/// Chart selection: the x-chart is used unless |F_y| < kChartSwitch * |grad F|.
inline constexpr double kChartSwitch = 1e-6;

/// Minimum distance of a hyperelliptic sample point from the branch locus.
inline constexpr double kBranchAvoidance = 0.05;

/// Applies the chart rule to a point already known to lie on the curve.
CurvePoint make_point(const CurveModel& model, cplx x, cplx y);

void require_on_curve(const CurveModel& model, const CurvePoint& p);

/// Real: x drawn from [-r, r] (plane curves then take a uniformly chosen root
/// y, hyperelliptic curves the real or imaginary square root). Complex: x from
/// the disk of radius r.
enum class SampleMode { Real, Complex };

struct SampleOptions {
    double radius = 2.0;          ///< disk radius / half interval for x draws
    double min_separation = 1e-4; ///< pairwise distance of x coordinates
    int max_rejections = 50;      ///< retries per point
};

/// Seeded generic points on the curve, pairwise distinct in x.
std::vector<CurvePoint> sample_points(const CurveModel& model, std::size_t count, std::uint64_t seed,
                                      SampleMode mode, const SampleOptions& opts = {});

/// Roots of a polynomial given by ascending coefficients (companion matrix,
/// then one Newton step per root).
CVector polynomial_roots(const CVector& coeffs);

/// Basis of holomorphic n-differentials. Values are the coefficient of (dx)^n
/// at x-chart points and of (dy)^n at y-chart points. A basis is always a
/// linear transform of the model's monomial basis.
class DifferentialBasis {
public:
    /// The monomial basis: x^a y^b (dx)^n / F_y^n (plane curves), or
    /// x^j (dx)^n / y^n and x^j (dx)^n / y^(n-1) (hyperelliptic curves).
    static DifferentialBasis monomial(std::shared_ptr<const CurveModel> model, int weight);

    int weight() const { return weight_; }
    std::size_t dimension() const { return transform_.rows(); }
    const CurveModel& model() const { return *model_; }
    std::shared_ptr<const CurveModel> model_ptr() const { return model_; }
    /// Rows express basis elements in the monomial basis.
    const CMatrix& transform() const { return transform_; }

    CVector evaluate(const CurvePoint& p) const;
    /// [phi_i(p_j)]: dimension x points.size().
    CMatrix evaluate(std::span<const CurvePoint> points) const;

    /// New basis whose element i is sum_j t(i, j) * (this element j).
    DifferentialBasis transformed(const CMatrix& t) const;

    std::string monomial_label(std::size_t k) const;

private:
    struct Monomial {
        int x_power;
        int y_power;  // plane: power of y; hyperelliptic: exponent of 1/y
    };

    DifferentialBasis(std::shared_ptr<const CurveModel> model, int weight, std::vector<Monomial> monos,
                      CMatrix transform);
    CVector evaluate_monomials(const CurvePoint& p) const;

    std::shared_ptr<const CurveModel> model_;
    int weight_;
    std::vector<Monomial> monomials_;
    CMatrix transform_;
};

/// N_n = (2n - 1)(g - 1) + delta_{1n}.
std::size_t differential_dimension(std::size_t genus, int weight);

/// Anchor matrices with condition estimate above this are rejected.
inline constexpr double kAnchorConditionLimit = 1e8;

struct GammaBasis {
    DifferentialBasis basis;  ///< gamma_i(anchor_j) = delta_ij
    double condition;         ///< condition estimate of [phi_i(anchor_j)]
};

/// gamma_i = sum_j ([phi(anchors)]^-1)_ij phi_j.
GammaBasis gamma_basis(const DifferentialBasis& phi, std::span<const CurvePoint> anchors);

/// Refined Petri basis built on g anchor points.
class PetriBasis {
public:
    PetriBasis(DifferentialBasis omega, std::vector<CurvePoint> anchors, std::uint64_t certificate_seed);

    const DifferentialBasis& omega() const { return omega_; }
    const std::vector<CurvePoint>& anchors() const { return anchors_; }
    const PairIndexMap& pairs() const { return map_; }
    std::size_t genus() const { return map_.genus(); }
    /// N = 3g - 3 (the expected dimension of quadratic differentials).
    std::size_t quadratic_dimension() const { return differential_dimension(genus(), 2); }

    /// sigma_i = sum_j S_ij omega_j with S = [omega(anchors)]^-1.
    const CMatrix& sigma_coefficients() const { return sigma_coeffs_; }
    double anchor_condition() const { return anchor_condition_; }

    CVector sigma(const CurvePoint& z) const;
    /// All M products in v-layout (squares first, then sigma_j sigma_{j+k}).
    CVector v_all(const CurvePoint& z) const;
    /// omega_{1_i} omega_{2_i} for i < M.
    CVector omega_products(const CurvePoint& z) const;
    /// [v_i(z_j)] for i < N: N x points.size().
    CMatrix v_matrix(std::span<const CurvePoint> points) const;

    /// Numerical rank of [v_i(z_j)] over N fresh points (threshold 1e-8).
    std::size_t rank_certificate() const { return rank_; }

private:
    DifferentialBasis omega_;
    std::vector<CurvePoint> anchors_;
    PairIndexMap map_;
    CMatrix sigma_coeffs_;
    double anchor_condition_ = 0.0;
    std::vector<std::size_t> layout_;
    std::size_t rank_ = 0;
};

/// Builds the Petri basis; on a plane curve a rank certificate below N raises
/// "unexpected rank deficiency".
PetriBasis petri_basis(const DifferentialBasis& omega, std::span<const CurvePoint> anchors,
                       std::uint64_t certificate_seed);

/// Coefficients c (N x K) with values_k(z) = sum_j c_jk v_j(z), from the
/// N x N point-evaluation system at `nodes`. `values` is K x N: values_k(node_j).
CMatrix expand_in_petri_basis(const PetriBasis& petri, std::span<const CurvePoint> nodes,
                              const CMatrix& values);

/// w (N x M) with omega omega_i = sum_j w_ji v_j.
CMatrix expansion_coeffs(const PetriBasis& petri, std::span<const CurvePoint> nodes);

}  // namespace petrisiegel
