#include "doctest.h"
#include "test_helpers.hpp"

#include <cmath>
#include <numbers>

#include "petrisiegel/errors.hpp"
#include "petrisiegel/jacobian.hpp"

using namespace petrisiegel;
using namespace testutil;

namespace {

const HyperellipticCurve& genus_two() {
    static const HyperellipticCurve c = HyperellipticCurve::real({-2, -1, 0, 1, 2});
    return c;
}

const PeriodData& genus_two_periods() {
    static const PeriodData pd = compute_periods(genus_two());
    return pd;
}

CVector lin(double a, const CVector& u, double b, const CVector& v) {
    CVector out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = a * u[i] + b * v[i];
    return out;
}

std::vector<AbelImage> images(const PeriodData& pd, std::size_t count, std::uint64_t seed) {
    std::vector<AbelImage> out;
    for (const auto& p : sample_points(*pd.model, count, seed, SampleMode::Real)) out.push_back(abel_map(pd, p));
    return out;
}

}  // namespace

TEST_CASE("lemniscatic periods") {
    const PeriodData pd = compute_periods(HyperellipticCurve::real({-1, 0, 1}));
    CHECK(std::abs(pd.tau.Z()(0, 0) - cplx(0, 1)) < 1e-8);
    const PeriodData fine = compute_periods(HyperellipticCurve::real({-1, 0, 1}), {1e-14, 32, 8192});
    CHECK(std::abs(pd.tau.Z()(0, 0) - fine.tau.Z()(0, 0)) < 1e-8);
    // a-period 2 int_{-1}^0 dx / sqrt(x^3 - x) = Gamma(1/4)^2 / sqrt(2 pi)
    const double lemn = std::pow(std::tgamma(0.25), 2) / std::sqrt(2 * std::numbers::pi);
    CHECK(std::abs(pd.a_periods(0, 0)) == doctest::Approx(lemn).epsilon(1e-10));
}

TEST_CASE("equianharmonic periods") {
    const double s = std::sqrt(3.0) / 2;
    const PeriodData pd = compute_periods(HyperellipticCurve({cplx(1, 0), cplx(-0.5, s), cplx(-0.5, -s)}));
    const cplx r = reduce_to_fundamental_domain(pd.tau.Z()(0, 0));
    CHECK(std::abs(r - cplx(0.5, s)) < 1e-8);
}

TEST_CASE("fundamental domain reduction") {
    const cplx t{0.5, std::sqrt(3.0) / 2};
    CHECK(std::abs(reduce_to_fundamental_domain(t + 3.0) - t) < 1e-12);
    CHECK(std::abs(reduce_to_fundamental_domain(-1.0 / t) - t) < 1e-12);
    CHECK(std::abs(reduce_to_fundamental_domain(cplx(0.1, 0.2)) - reduce_to_fundamental_domain(-1.0 / cplx(0.1, 0.2))) <
          1e-12);
    CHECK(std::abs(reduce_to_fundamental_domain(cplx(0, 0.5)) - cplx(0, 2)) < 1e-12);
    CHECK_THROWS_AS(reduce_to_fundamental_domain(cplx(0, -1)), PreconditionError);
}

TEST_CASE("genus-two period certificates") {
    const PeriodData& pd = genus_two_periods();
    CHECK(pd.genus() == 2);
    CHECK(pd.symmetry_defect <= 1e-8);
    for (double p : pd.pivots) CHECK(p > 0);
    for (const auto& row : pd.a_error)
        for (double e : row) CHECK(e < 1e-9);
    const CMatrix id = pd.a_periods * pd.normalization;
    CHECK(max_abs(id - CMatrix::identity(2)) < 1e-12);
}

TEST_CASE("genus-three period certificates") {
    const PeriodData pd = compute_periods(HyperellipticCurve::real({-3, -2, -1, 0, 1, 2, 3.5}));
    CHECK(pd.symmetry_defect <= 1e-8);
    CHECK(pd.pivots.size() == 3);
    CHECK_THROWS_AS(compute_periods(HyperellipticCurve::real({-4, -3, -2, -1, 0, 1, 2, 3, 4})), PreconditionError);
}

TEST_CASE("Abel map of branch points are half periods") {
    const PeriodData& pd = genus_two_periods();
    CHECK(vector_norm(abel_branch_point(pd, 0).value) == 0.0);
    for (std::size_t k = 1; k < 5; ++k) {
        const AbelImage a = abel_branch_point(pd, k);
        CHECK(lattice_distance(pd.tau, lin(2, a.value, 0, a.value)) < 1e-6);
        CHECK(lattice_distance(pd.tau, a.value) > 0.1);
    }
}

TEST_CASE("Abel map involution and path independence") {
    const PeriodData& pd = genus_two_periods();
    const auto pts = sample_points(*pd.model, 10, 21, SampleMode::Real);
    AbelOptions other;
    other.waypoint_height = -1.6;
    for (const auto& p : pts) {
        const AbelImage a = abel_map(pd, p);
        const AbelImage b = abel_map(pd, CurvePoint{p.x, -p.y, p.chart});
        CHECK(a.sheet == -b.sheet);
        CHECK(lattice_distance(pd.tau, lin(1, a.value, 1, b.value)) < 1e-6);
        const AbelImage c = abel_map(pd, p, other);
        CHECK(lattice_distance(pd.tau, lin(1, a.value, -1, c.value)) < 1e-6);
    }
    const auto cpts = sample_points(*pd.model, 4, 22, SampleMode::Complex);
    for (const auto& p : cpts) {
        const AbelImage a = abel_map(pd, p);
        const AbelImage c = abel_map(pd, p, other);
        CHECK(lattice_distance(pd.tau, lin(1, a.value, -1, c.value)) < 1e-6);
    }
    CHECK_THROWS_AS(abel_map(pd, CurvePoint{cplx(1, 0), 0.0, Chart::X}), PreconditionError);
}

TEST_CASE("prime form vanishes on the diagonal along the curve") {
    const PeriodData& pd = genus_two_periods();
    ThetaFunction th(pd.tau);
    const auto delta = ThetaCharacteristic::first_odd(2);
    const cplx x0{0.5, 0.0};
    const cplx y0 = std::sqrt(genus_two().f(x0));
    const CVector a0 = abel_map(pd, CurvePoint{x0, y0, Chart::X}).value;
    double prev = 1e300;
    for (double h : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const cplx x = x0 + h;
        cplx y = std::sqrt(genus_two().f(x));
        if (std::abs(y - y0) > std::abs(y + y0)) y = -y;
        const double v = std::abs(reduced_prime_form(abel_map(pd, CurvePoint{x, y, Chart::X}).value, a0, th, delta));
        CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("Riemann constants on the genus-two curve") {
    const PeriodData& pd = genus_two_periods();
    ThetaFunction th(pd.tau);
    const auto im = images(pd, 6, 31);
    std::vector<CVector> probes;
    for (const auto& a : im) probes.push_back(a.value);
    const RiemannConstants rc = find_riemann_constants(th, probes);
    CHECK(rc.best < 1e-6);
    CHECK(rc.runner_up > 1e-2);

    // base e_1 -> e_j shifts the constants by A(e_j)
    for (std::size_t j = 1; j < 5; ++j) {
        const CVector aj = abel_branch_point(pd, j).value;
        std::vector<CVector> shifted;
        for (const auto& p : probes) shifted.push_back(lin(1, p, -1, aj));
        const RiemannConstants rj = find_riemann_constants(th, shifted);
        const CVector diff = lin(1, rj.h, -1, lin(1, rc.h, 1, aj));
        CHECK(lattice_distance(pd.tau, diff) < 1e-6);
    }
}

TEST_CASE("Riemann constants at genus one with a two-torsion base") {
    const PeriodData pd = compute_periods(HyperellipticCurve::real({-1, 0.3, 1.4}));
    ThetaFunction th(pd.tau);
    const RiemannConstants rc = find_riemann_constants(th, {CVector{0.0}});
    const CVector expect{(1.0 + pd.tau.Z()(0, 0)) / 2.0};
    CHECK(lattice_distance(pd.tau, lin(1, rc.h, -1, expect)) < 1e-12);
}

TEST_CASE("Fay identity on the genus-two Jacobian") {
    const PeriodData& pd = genus_two_periods();
    ThetaFunction th(pd.tau);
    const auto odd = odd_characteristics(2);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto im = images(pd, 4, 40 + seed);
        Rng rng(seed);
        const CVector w{rng.disk(0.5), rng.disk(0.5)};
        const std::vector<CVector> x{im[0].value, im[1].value}, y{im[2].value, im[3].value};
        double lo = 1, hi = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            const FayResult fr = fay_residual(w, x, y, th, odd[k]);
            CHECK(fr.residual <= 1e-6);
            lo = std::min(lo, fr.residual);
            hi = std::max(hi, fr.residual);
        }
        CHECK(hi - lo <= 1e-6);
        // points off the Abel curve break the identity
        const std::vector<CVector> xoff{CVector{rng.disk(0.4), rng.disk(0.4)}, im[1].value};
        CHECK(fay_residual(w, xoff, y, th, odd[0]).residual > 1e-3);
    }
}

TEST_CASE("gamma cross-ratio against theta") {
    const PeriodData& pd = genus_two_periods();
    ThetaFunction th(pd.tau);
    const auto pts = sample_points(*pd.model, 12, 51, SampleMode::Real);
    std::vector<CVector> probes;
    for (std::size_t k = 0; k < 6; ++k) probes.push_back(abel_map(pd, pts[k]).value);
    const RiemannConstants rc = find_riemann_constants(th, probes);
    const auto delta = ThetaCharacteristic::first_odd(2);
    for (int n : {1, 2}) {
        const std::size_t nn = differential_dimension(2, n);
        const std::vector<CurvePoint> anchors(pts.begin() + 6, pts.begin() + 6 + static_cast<std::ptrdiff_t>(nn));
        for (std::size_t i = 0; i < nn; ++i)
            for (std::size_t j = 0; j < nn; ++j) {
                const auto c = gamma_cross_ratio_check(pd, th, rc, n, anchors, pts[10], pts[11], i, j, delta);
                CHECK(c.residual <= 1e-6);
                if (i == j) CHECK(std::abs(c.curve_side - 1.0) < 1e-12);
            }
    }
    // a wrong half-period breaks the agreement
    RiemannConstants wrong = rc;
    wrong.h = lattice_point(pd.tau, std::vector<double>{0.0, 0.0}, std::vector<double>{0.5, 0.0});
    const std::vector<CurvePoint> anchors(pts.begin() + 6, pts.begin() + 8);
    CHECK(gamma_cross_ratio_check(pd, th, wrong, 1, anchors, pts[10], pts[11], 0, 1, delta).residual > 1e-3);
}
