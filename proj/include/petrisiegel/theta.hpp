#pragma once

#include <string>
#include <vector>

#include "petrisiegel/linalg.hpp"
#include "petrisiegel/siegel.hpp"

namespace petrisiegel {

/// Half-integer characteristic [a; b], entries of a and b in {0, 1/2}.
struct ThetaCharacteristic {
    std::vector<double> a;
    std::vector<double> b;

    static ThetaCharacteristic zero(std::size_t g);
    /// Bits 0..g-1 select a_i = 1/2, bits g..2g-1 select b_i = 1/2.
    static ThetaCharacteristic from_index(std::size_t g, std::size_t index);
    /// a = b = (1/2, 0, ..., 0).
    static ThetaCharacteristic first_odd(std::size_t g);

    std::size_t genus() const { return a.size(); }
    /// 4 a.b mod 2.
    int parity() const;
    bool odd() const { return parity() == 1; }
    std::string str() const;
};

/// All odd characteristics in from_index order.
std::vector<ThetaCharacteristic> odd_characteristics(std::size_t g);

struct ThetaEvalConfig {
    double epsilon = 1e-14;    ///< absolute error target for the normalised sum
    double max_radius = 40.0;  ///< cap on the ellipsoid radius R
    double max_terms = 1e6;    ///< cap on the enumeration box size at radius R
};

/// theta = mantissa * exp(log_scale). The mantissa is the lattice sum S times
/// the phase of the characteristic prefactor; |S| is lattice periodic in z.
struct ThetaValue {
    cplx mantissa;
    double log_scale;
    double error_bound;  ///< bound on |S - S_R|
    std::size_t terms;

    cplx value() const { return mantissa * std::exp(log_scale); }
    double normalized_modulus() const { return std::abs(mantissa); }
};

/// Riemann theta function for a fixed period matrix. The radius of the
/// summation ellipsoid is fixed at construction from the Gaussian tail bound.
class ThetaFunction {
public:
    explicit ThetaFunction(SiegelPoint tau, ThetaEvalConfig cfg = {});

    const SiegelPoint& tau() const { return tau_; }
    std::size_t genus() const { return tau_.genus(); }
    double radius() const { return radius_; }
    double shortest_vector() const { return rho_; }
    /// Upper bound on the number of lattice points visited per evaluation.
    double term_estimate() const;
    const ThetaEvalConfig& config() const { return cfg_; }

    ThetaValue evaluate(std::span<const cplx> z, const ThetaCharacteristic& ch) const;
    ThetaValue evaluate(std::span<const cplx> z) const;
    cplx operator()(std::span<const cplx> z, const ThetaCharacteristic& ch) const { return evaluate(z, ch).value(); }
    cplx operator()(std::span<const cplx> z) const { return evaluate(z).value(); }

private:
    SiegelPoint tau_;
    ThetaEvalConfig cfg_;
    double rho_;
    double radius_;
};

/// (g/2) (2/rho)^g Gamma(g/2, (R - rho/2)^2): tail bound of the ellipsoid sum.
double theta_tail_bound(std::size_t g, double rho, double radius);

/// Upper incomplete gamma Gamma(s, x) for s a positive multiple of 1/2.
double upper_gamma_half_integer(double s, double x);

/// Lattice coordinates (m, n) with v = n + tau m.
struct LatticeCoordinates {
    std::vector<double> m;
    std::vector<double> n;
};
LatticeCoordinates lattice_coordinates(const SiegelPoint& tau, std::span<const cplx> v);

/// Distance from v to the nearest point of Z^g + tau Z^g, measured after
/// rounding lattice coordinates (max over |fractional parts| of m and n).
double lattice_distance(const SiegelPoint& tau, std::span<const cplx> v);

/// n + tau m for real vectors m, n.
CVector lattice_point(const SiegelPoint& tau, std::span<const double> m, std::span<const double> n);

/// Reduced prime form e(u, v) = theta[delta](u - v).
cplx reduced_prime_form(std::span<const cplx> u, std::span<const cplx> v, const ThetaFunction& theta,
                        const ThetaCharacteristic& delta);

struct FayResult {
    cplx lhs;
    cplx rhs;
    double residual;  ///< |lhs - rhs| / max(|lhs|, |rhs|)
};

/// Both sides of the trisecant identity for m = x.size() = y.size() >= 2.
FayResult fay_residual(std::span<const cplx> w, const std::vector<CVector>& x, const std::vector<CVector>& y,
                       const ThetaFunction& theta, const ThetaCharacteristic& delta);

/// |theta(w)| below this (normalised) is treated as zero.
inline constexpr double kThetaZeroTolerance = 1e-8;

struct RiemannConstants {
    ThetaCharacteristic characteristic;  ///< h = tau a + b
    CVector h;
    double best;       ///< max over probes of |S(probe - h)| for the winner
    double runner_up;  ///< same quantity for the second-best half-period
};

/// Brute force over the 4^g half-periods; throws Error("ambiguous constants")
/// unless best < 1e-6 and runner_up > 1e-2.
RiemannConstants find_riemann_constants(const ThetaFunction& theta, const std::vector<CVector>& probes);

}  // namespace petrisiegel
