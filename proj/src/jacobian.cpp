#include "petrisiegel/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "petrisiegel/errors.hpp"

namespace petrisiegel {

namespace {

constexpr cplx kI{0.0, 1.0};

double tau_norm_defect(const CMatrix& t) { return frobenius_norm(t - t.transpose()) / frobenius_norm(t); }

// |x^k / sqrt(prod_{l != skip} (x - e_l))| on a real segment.
QuadResult real_segment(const std::vector<double>& e, std::size_t k, std::size_t power, const QuadOptions& quad) {
    auto g = [&](double x) -> cplx {
        double rest = 1.0;
        for (std::size_t l = 0; l < e.size(); ++l)
            if (l != k && l != k + 1) rest *= x - e[l];
        return std::pow(x, static_cast<double>(power)) / std::sqrt(std::abs(rest));
    };
    return quad_segment(g, e[k], e[k + 1], EndpointSingularity::Both, quad);
}

// int_a^b P(x) dx / y along the straight segment between branch points a = e_ia, b = e_ib,
// y continued along the segment from an arbitrary starting sheet.
QuadResult complex_segment(const std::vector<cplx>& e, std::size_t ia, std::size_t ib, std::size_t power,
                           const QuadOptions& quad) {
    const cplx a = e[ia], b = e[ib];
    const cplx pref = (b - a) / (std::sqrt(b - a) * std::sqrt(a - b));
    auto g = [&](double s) -> cplx {
        const cplx x = a + (b - a) * s;
        cplx rest{1.0, 0.0};
        for (std::size_t l = 0; l < e.size(); ++l)
            if (l != ia && l != ib) rest *= std::sqrt(a - e[l]) * std::sqrt((x - e[l]) / (a - e[l]));
        return std::pow(x, static_cast<double>(power)) * pref / rest;
    };
    return quad_segment(g, 0.0, 1.0, EndpointSingularity::Both, quad);
}

SiegelPoint make_tau(CMatrix& b, const CMatrix& c, bool& flipped, double& defect) {
    CMatrix t = b * c;
    defect = tau_norm_defect(t);
    if (defect > kSymmetryCertificate)
        throw Error("period matrix failed the symmetry certificate (defect " + std::to_string(defect) + ")");
    t = 0.5 * (t + t.transpose());
    CMatrix y(t.rows(), t.cols());
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) y(i, j) = -t(i, j).imag();
    flipped = check_positive_definite(y).positive_definite;
    if (flipped) {
        b = cplx(-1.0) * b;
        t = cplx(-1.0) * t;
    }
    return SiegelPoint(std::move(t));
}

}  // namespace

CVector PeriodData::numerators(cplx x) const {
    const std::size_t g = genus();
    CVector out(g, 0.0);
    cplx xp{1.0, 0.0};
    for (std::size_t k = 0; k < g; ++k) {
        for (std::size_t j = 0; j < g; ++j) out[j] += normalization(k, j) * xp;
        xp *= x;
    }
    return out;
}

PeriodData compute_periods(const HyperellipticCurve& curve, const QuadOptions& quad) {
    const std::size_t g = curve.genus();
    if (g == 0 || g > kMaxPeriodGenus) throw PreconditionError("periods: genus must be between 1 and 3");
    const auto& bp = curve.branch_points();
    CMatrix a(g, g), b(g, g);
    std::vector<std::vector<double>> aerr(g, std::vector<double>(g)), berr(g, std::vector<double>(g));

    if (curve.has_real_branch_points()) {
        std::vector<double> e;
        for (const auto& z : bp) e.push_back(z.real());
        // I_k = int_{e_k}^{e_{k+1}} x^j dx / sqrt|f|, k 0-based.
        std::vector<std::vector<QuadResult>> seg(2 * g);
        for (std::size_t k = 0; k < 2 * g; ++k)
            for (std::size_t j = 0; j < g; ++j) seg[k].push_back(real_segment(e, k, j, quad));
        const auto gi = static_cast<long long>(g);
        for (std::size_t i = 1; i <= g; ++i)
            for (std::size_t j = 0; j < g; ++j) {
                const auto& f = seg[2 * i - 2][j];
                const double sa = (gi - static_cast<long long>(i) + 1) % 2 == 0 ? 1.0 : -1.0;
                a(i - 1, j) = 2.0 * sa * f.value;
                aerr[i - 1][j] = 2.0 * f.error;
                cplx sum{0.0, 0.0};
                double err = 0;
                for (std::size_t k = i; k <= g; ++k) {
                    const auto& gk = seg[2 * k - 1][j];
                    const double sb = (gi - static_cast<long long>(k)) % 2 == 0 ? 1.0 : -1.0;
                    sum += -2.0 * kI * sb * gk.value;
                    err += 2.0 * gk.error;
                }
                b(i - 1, j) = sum;
                berr[i - 1][j] = err;
            }
    } else {
        const auto r1 = complex_segment(bp, 0, 1, 0, quad);
        const auto r2 = complex_segment(bp, 1, 2, 0, quad);
        a(0, 0) = 2.0 * r1.value;
        b(0, 0) = 2.0 * r2.value;
        aerr[0][0] = 2.0 * r1.error;
        berr[0][0] = 2.0 * r2.error;
    }

    const LU lu(a);
    if (condition_estimate(a, lu) > 1e12) throw DegenerateConfiguration("periods: ill-conditioned a-periods", 0.0);
    CMatrix c = inverse(a);
    bool flipped = false;
    double defect = 0;
    SiegelPoint tau = make_tau(b, c, flipped, defect);
    std::vector<double> pivots;
    for (std::size_t i = 0; i < g; ++i) pivots.push_back(tau.cholesky()(i, i).real());
    return PeriodData{std::make_shared<const CurveModel>(curve), a, b, c, std::move(tau), aerr, berr, defect, pivots,
                      flipped};
}

cplx reduce_to_fundamental_domain(cplx t) {
    if (!(t.imag() > 0)) throw PreconditionError("fundamental domain: Im tau must be positive");
    constexpr double eps = 1e-12;
    for (int it = 0; it < 1000; ++it) {
        t -= std::round(t.real());
        if (std::abs(t) < 1.0 - eps)
            t = -1.0 / t;
        else
            break;
    }
    if (t.real() < -0.5 + eps) t += 1.0;
    if (std::abs(std::abs(t) - 1.0) < eps && t.real() < 0) t = -1.0 / t;
    if (t.real() < -0.5 + eps) t += 1.0;
    return t;
}

namespace {

double segment_distance(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    double s = std::norm(d) > 0 ? ((p - a) * std::conj(d)).real() / std::norm(d) : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(p - (a + s * d));
}

// Polyline integration of the normalised differentials with per-factor
// continuation of sqrt(x - e_k). The path starts at e_0; if end_branch is
// set, it ends at that branch point.
struct PathResult {
    CVector value;
    cplx y_end;
    double error;
};

PathResult integrate_path(const PeriodData& pd, const std::vector<cplx>& pts, std::ptrdiff_t end_branch,
                          const QuadOptions& quad) {
    const auto& e = pd.curve().branch_points();
    const std::size_t nb = e.size();
    const std::size_t g = pd.genus();
    for (std::size_t leg = 0; leg + 1 < pts.size(); ++leg)
        for (std::size_t k = 0; k < nb; ++k) {
            if (leg == 0 && k == 0) continue;
            if (leg + 2 == pts.size() && static_cast<std::ptrdiff_t>(k) == end_branch) continue;
            if (segment_distance(e[k], pts[leg], pts[leg + 1]) < kRerouteDistance)
                throw Error("Abel map: reroute failure near branch point " + std::to_string(k + 1));
        }

    std::vector<cplx> r(nb);
    for (std::size_t k = 1; k < nb; ++k) r[k] = std::sqrt(e[0] - e[k]);
    CVector total(g, 0.0);
    double err = 0;

    for (std::size_t leg = 0; leg + 1 < pts.size(); ++leg) {
        const cplx x0 = pts[leg], x1 = pts[leg + 1], d = x1 - x0;
        const bool first = leg == 0;
        const bool last_branch = leg + 2 == pts.size() && end_branch >= 0;
        const auto jb = static_cast<std::size_t>(end_branch);
        const cplx sd = std::sqrt(d);
        auto factors = [&](double s, std::size_t skip_a, std::size_t skip_b) {
            const cplx x = x0 + d * s;
            cplx rest{1.0, 0.0};
            for (std::size_t k = 0; k < nb; ++k)
                if (k != skip_a && k != skip_b) rest *= r[k] * std::sqrt((x - e[k]) / (x0 - e[k]));
            return rest;
        };
        const std::size_t none = nb;
        for (std::size_t j = 0; j < g; ++j) {
            QuadResult q;
            if (first && last_branch) {
                throw PreconditionError("Abel map: path needs a waypoint");
            } else if (first) {
                q = quad_segment(
                    [&](double s) { return pd.numerators(x0 + d * s)[j] * sd / factors(s, 0, none); }, 0.0, 1.0,
                    EndpointSingularity::Left, quad);
            } else if (last_branch) {
                q = quad_segment(
                    [&](double s) { return pd.numerators(x0 + d * s)[j] * d / (r[jb] * factors(s, jb, none)); },
                    0.0, 1.0, EndpointSingularity::Right, quad);
            } else {
                q = quad_segment([&](double s) { return pd.numerators(x0 + d * s)[j] * d / factors(s, none, none); },
                                 0.0, 1.0, EndpointSingularity::None, quad);
            }
            total[j] += q.value;
            err += q.error;
        }
        if (first) {
            r[0] = sd;
            for (std::size_t k = 1; k < nb; ++k) r[k] *= std::sqrt((x1 - e[k]) / (x0 - e[k]));
        } else {
            for (std::size_t k = 0; k < nb; ++k)
                r[k] = (last_branch && k == jb) ? cplx{0.0, 0.0} : r[k] * std::sqrt((x1 - e[k]) / (x0 - e[k]));
        }
    }
    cplx y{1.0, 0.0};
    for (const auto& f : r) y *= f;
    return {total, y, err};
}

std::vector<std::vector<cplx>> candidate_paths(const PeriodData& pd, cplx target, double h) {
    const cplx start = pd.curve().branch_points()[0];
    const double sign = target.imag() < 0 ? -1.0 : 1.0;
    std::vector<std::vector<cplx>> out;
    for (double scale : {1.0, -1.0, 1.7, -1.7, 0.45})
        out.push_back({start, cplx(target.real(), sign * scale * h), target});
    return out;
}

}  // namespace

AbelImage abel_map(const PeriodData& pd, const CurvePoint& p, const AbelOptions& opts) {
    const auto& curve = pd.curve();
    require_on_curve(*pd.model, p);
    if (curve.branch_distance(p.x) < kRerouteDistance)
        throw PreconditionError("Abel map: point is a branch point; use abel_branch_point");
    std::string last_error = "no path";
    for (const auto& path : candidate_paths(pd, p.x, opts.waypoint_height)) {
        try {
            const PathResult pr = integrate_path(pd, path, -1, opts.quad);
            const double scale = std::max(std::abs(p.y), 1e-300);
            int sheet;
            if (std::abs(pr.y_end - p.y) <= 1e-6 * scale)
                sheet = 1;
            else if (std::abs(pr.y_end + p.y) <= 1e-6 * scale)
                sheet = -1;
            else
                throw Error("Abel map: continued y does not match the point");
            CVector v = pr.value;
            if (sheet < 0)
                for (auto& c : v) c = -c;
            return {p, v, path, sheet, pr.error};
        } catch (const TruncationFailure&) {
            throw;
        } catch (const Error& ex) {
            last_error = ex.what();
        }
    }
    throw Error(last_error);
}

AbelImage abel_branch_point(const PeriodData& pd, std::size_t index, const AbelOptions& opts) {
    const auto& e = pd.curve().branch_points();
    if (index >= e.size()) throw PreconditionError("Abel map: branch index out of range");
    const CurvePoint p{e[index], 0.0, Chart::X};
    if (index == 0) return {p, CVector(pd.genus(), 0.0), {e[0]}, 1, 0.0};
    std::string last_error = "no path";
    for (const auto& path : candidate_paths(pd, e[index], opts.waypoint_height)) {
        try {
            const PathResult pr = integrate_path(pd, path, static_cast<std::ptrdiff_t>(index), opts.quad);
            return {p, pr.value, path, 1, pr.error};
        } catch (const TruncationFailure&) {
            throw;
        } catch (const Error& ex) {
            last_error = ex.what();
        }
    }
    throw Error(last_error);
}

namespace {

CVector combine(std::initializer_list<std::pair<double, const CVector*>> terms, std::size_t g) {
    CVector out(g, 0.0);
    for (const auto& [c, v] : terms)
        for (std::size_t k = 0; k < g; ++k) out[k] += c * (*v)[k];
    return out;
}

}  // namespace

CrossRatioCheck gamma_cross_ratio_check(const PeriodData& pd, const ThetaFunction& theta, const RiemannConstants& rc,
                                        int weight, std::span<const CurvePoint> anchors, const CurvePoint& z,
                                        const CurvePoint& zp, std::size_t i, std::size_t j,
                                        const ThetaCharacteristic& delta, const AbelOptions& opts) {
    const std::size_t g = pd.genus();
    if (weight < 1) throw PreconditionError("cross-ratio: weight must be positive");
    const auto phi = DifferentialBasis::monomial(pd.model, weight);
    if (anchors.size() != phi.dimension()) throw PreconditionError("cross-ratio: need N_n anchors");
    if (i >= anchors.size() || j >= anchors.size()) throw PreconditionError("cross-ratio: index out of range");
    const GammaBasis gb = gamma_basis(phi, anchors);
    const CVector gz = gb.basis.evaluate(z), gzp = gb.basis.evaluate(zp);
    const cplx curve_side = gz[i] * gzp[j] / (gzp[i] * gz[j]);

    std::vector<CVector> pa;
    for (const auto& p : anchors) pa.push_back(abel_map(pd, p, opts).value);
    const CVector az = abel_map(pd, z, opts).value, azp = abel_map(pd, zp, opts).value;
    CVector w(g, 0.0);
    for (const auto& v : pa)
        for (std::size_t k = 0; k < g; ++k) w[k] += v[k];
    const double odd = 2.0 * weight - 1.0;
    for (std::size_t k = 0; k < g; ++k) w[k] -= odd * rc.h[k];
    const double theta_w = theta.evaluate(w).normalized_modulus();
    if (theta_w < kThetaZeroTolerance) throw Error("cross-ratio: theta(w) vanishes; resample anchors");

    auto th = [&](const CVector& a, const CVector& b) { return theta(combine({{1.0, &w}, {1.0, &a}, {-1.0, &b}}, g)); };
    auto e = [&](const CVector& a, const CVector& b) { return reduced_prime_form(a, b, theta, delta); };
    const cplx num = th(az, pa[i]) * th(azp, pa[j]) * e(az, pa[j]) * e(azp, pa[i]);
    const cplx den = th(azp, pa[i]) * th(az, pa[j]) * e(az, pa[i]) * e(azp, pa[j]);
    const cplx theta_side = num / den;
    const double scale = std::max(std::abs(curve_side), std::abs(theta_side));
    return {curve_side, theta_side, scale == 0 ? 0.0 : std::abs(curve_side - theta_side) / scale, theta_w};
}

}  // namespace petrisiegel
