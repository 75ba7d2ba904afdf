#pragma once

#include <memory>
#include <vector>

#include "petrisiegel/curves.hpp"
#include "petrisiegel/linalg.hpp"
#include "petrisiegel/quadrature.hpp"
#include "petrisiegel/siegel.hpp"
#include "petrisiegel/theta.hpp"

namespace petrisiegel {

inline constexpr std::size_t kMaxPeriodGenus = 3;
inline constexpr double kSymmetryCertificate = 1e-6;

/// Periods of x^(k-1) dx / y. Row i of a_periods / b_periods is the cycle
/// a_i / b_i, column k the differential. a_i encircles [e_(2i-1), e_(2i)];
/// b_i encircles [e_(2i), e_(2g+1)].
struct PeriodData {
    std::shared_ptr<const CurveModel> model;
    CMatrix a_periods;
    CMatrix b_periods;
    CMatrix normalization;  ///< C = a_periods^-1; normalised omega_j = sum_k C_kj x^(k-1) dx / y
    SiegelPoint tau;
    std::vector<std::vector<double>> a_error;
    std::vector<std::vector<double>> b_error;
    double symmetry_defect;      ///< |tau - tau^T| / |tau| before symmetrisation
    std::vector<double> pivots;  ///< diagonal of the Cholesky factor of Im tau
    bool b_flipped;              ///< b-cycles reversed to make Im tau positive

    const HyperellipticCurve& curve() const { return std::get<HyperellipticCurve>(*model); }
    std::size_t genus() const { return tau.genus(); }
    /// Numerators of the normalised differentials at x (divide by y).
    CVector numerators(cplx x) const;
};

/// Genus <= 3; real branch points, or complex ones in genus 1.
PeriodData compute_periods(const HyperellipticCurve& curve, const QuadOptions& quad = {1e-12, 16, 8192});

/// Representative of tau in the standard fundamental domain of SL(2, Z).
cplx reduce_to_fundamental_domain(cplx tau);

struct AbelOptions {
    double waypoint_height = 1.0;  ///< path e_1 -> Re x + i h -> x, h signed by Im x
    QuadOptions quad{1e-12, 16, 8192};
};

/// Integral of the normalised differentials from e_1 to a point.
struct AbelImage {
    CurvePoint point;
    CVector value;
    std::vector<cplx> waypoints;  ///< polyline from e_1 to point.x
    int sheet;                    ///< -1 if the continued y ended at -point.y
    double error;
};

inline constexpr double kRerouteDistance = 1e-6;

AbelImage abel_map(const PeriodData& pd, const CurvePoint& p, const AbelOptions& opts = {});
/// Abel image of branch point e_(index+1); index 0 is the base point.
AbelImage abel_branch_point(const PeriodData& pd, std::size_t index, const AbelOptions& opts = {});

struct CrossRatioCheck {
    cplx curve_side;
    cplx theta_side;
    double residual;
    double theta_w;  ///< normalised |theta(w)|
};

/// Curve-side gamma^n cross-ratio against its theta-side expression with
/// w = sum A(anchor) - (2n-1) h, h the Riemann constants half-period.
CrossRatioCheck gamma_cross_ratio_check(const PeriodData& pd, const ThetaFunction& theta, const RiemannConstants& rc,
                                        int weight, std::span<const CurvePoint> anchors, const CurvePoint& z,
                                        const CurvePoint& zp, std::size_t i, std::size_t j,
                                        const ThetaCharacteristic& delta, const AbelOptions& opts = {});

}  // namespace petrisiegel
