#include "petrisiegel/theta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "petrisiegel/errors.hpp"

namespace petrisiegel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

void require_genus(const SiegelPoint& tau, std::size_t n, const char* what) {
    if (n != tau.genus()) throw PreconditionError(std::string(what) + ": vector length does not match genus");
}

// Visit every integer n with |T (n + c)|^2 <= r2, T upper triangular.
void enumerate_ellipsoid(const CMatrix& t, std::span<const double> c, double r2,
                         const std::function<void(const std::vector<long long>&, double)>& visit) {
    const std::size_t g = t.rows();
    std::vector<long long> n(g, 0);
    std::function<void(std::size_t, double)> level = [&](std::size_t i, double acc) {
        double shift = c[i];
        for (std::size_t j = i + 1; j < g; ++j) shift += t(i, j).real() * (static_cast<double>(n[j]) + c[j]) / t(i, i).real();
        const double tii = t(i, i).real();
        const double room = r2 - acc;
        if (room < 0) return;
        const double half = std::sqrt(room) / tii;
        const auto lo = static_cast<long long>(std::ceil(-shift - half));
        const auto hi = static_cast<long long>(std::floor(-shift + half));
        for (long long k = lo; k <= hi; ++k) {
            n[i] = k;
            const double comp = tii * (static_cast<double>(k) + shift);
            const double next = acc + comp * comp;
            if (next > r2) continue;
            if (i == 0)
                visit(n, next);
            else
                level(i - 1, next);
        }
    };
    level(g - 1, 0.0);
}

double shortest_lattice_vector(const SiegelPoint& tau) {
    const std::size_t g = tau.genus();
    double best2 = tau.Y()(0, 0).real();
    for (std::size_t i = 1; i < g; ++i) best2 = std::min(best2, tau.Y()(i, i).real());
    const std::vector<double> zero(g, 0.0);
    double found = best2;
    enumerate_ellipsoid(tau.cholesky(), zero, best2 * (1 + 1e-12), [&](const std::vector<long long>& n, double q) {
        if (std::all_of(n.begin(), n.end(), [](long long k) { return k == 0; })) return;
        found = std::min(found, q);
    });
    return std::sqrt(kPi * found);
}

}  // namespace

ThetaCharacteristic ThetaCharacteristic::zero(std::size_t g) {
    return {std::vector<double>(g, 0.0), std::vector<double>(g, 0.0)};
}

ThetaCharacteristic ThetaCharacteristic::from_index(std::size_t g, std::size_t index) {
    if (g == 0 || g > 16) throw PreconditionError("characteristic genus out of range");
    if (index >= (std::size_t{1} << (2 * g))) throw PreconditionError("characteristic index out of range");
    ThetaCharacteristic ch = zero(g);
    for (std::size_t i = 0; i < g; ++i) {
        if (index >> i & 1U) ch.a[i] = 0.5;
        if (index >> (g + i) & 1U) ch.b[i] = 0.5;
    }
    return ch;
}

ThetaCharacteristic ThetaCharacteristic::first_odd(std::size_t g) {
    ThetaCharacteristic ch = zero(g);
    ch.a[0] = 0.5;
    ch.b[0] = 0.5;
    return ch;
}

int ThetaCharacteristic::parity() const {
    if (a.size() != b.size()) throw PreconditionError("characteristic halves differ in length");
    int count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] != 0.0 && a[i] != 0.5) || (b[i] != 0.0 && b[i] != 0.5))
            throw PreconditionError("characteristic entries must be 0 or 1/2");
        if (a[i] == 0.5 && b[i] == 0.5) ++count;
    }
    return count % 2;
}

std::string ThetaCharacteristic::str() const {
    std::string s = "[";
    for (double v : a) s += v == 0.0 ? '0' : '1';
    s += ';';
    for (double v : b) s += v == 0.0 ? '0' : '1';
    return s + "]/2";
}

std::vector<ThetaCharacteristic> odd_characteristics(std::size_t g) {
    std::vector<ThetaCharacteristic> out;
    for (std::size_t k = 0; k < (std::size_t{1} << (2 * g)); ++k) {
        auto ch = ThetaCharacteristic::from_index(g, k);
        if (ch.odd()) out.push_back(std::move(ch));
    }
    return out;
}

double upper_gamma_half_integer(double s, double x) {
    const double twice = 2 * s;
    if (s <= 0 || std::abs(twice - std::round(twice)) > 1e-12) throw PreconditionError("upper gamma needs s in N/2");
    if (x < 0) throw PreconditionError("upper gamma needs x >= 0");
    const auto steps = static_cast<int>(std::round(twice));
    double cur, k;
    if (steps % 2 == 1) {
        cur = std::sqrt(kPi) * std::erfc(std::sqrt(x));
        k = 0.5;
    } else {
        cur = std::exp(-x);
        k = 1.0;
    }
    while (k + 0.5 < s) {
        cur = k * cur + std::pow(x, k) * std::exp(-x);
        k += 1.0;
    }
    return cur;
}

double theta_tail_bound(std::size_t g, double rho, double radius) {
    const double gd = static_cast<double>(g);
    const double shifted = std::max(0.0, radius - rho / 2);
    return gd / 2 * std::pow(2 / rho, gd) * upper_gamma_half_integer(gd / 2, shifted * shifted);
}

ThetaFunction::ThetaFunction(SiegelPoint tau, ThetaEvalConfig cfg) : tau_(std::move(tau)), cfg_(cfg) {
    if (!(cfg_.epsilon > 0)) throw PreconditionError("theta epsilon must be positive");
    if (!(cfg_.max_radius > 0)) throw PreconditionError("theta radius cap must be positive");
    const std::size_t g = tau_.genus();
    rho_ = shortest_lattice_vector(tau_);
    double lo = (std::sqrt(static_cast<double>(g)) + rho_) / 2;
    double hi = cfg_.max_radius;
    if (lo > hi || theta_tail_bound(g, rho_, hi) > cfg_.epsilon)
        throw TruncationFailure("theta truncation failure: radius cap reached", theta_tail_bound(g, rho_, hi));
    if (theta_tail_bound(g, rho_, lo) > cfg_.epsilon) {
        for (int it = 0; it < 100 && hi - lo > 1e-9; ++it) {
            const double mid = (lo + hi) / 2;
            (theta_tail_bound(g, rho_, mid) > cfg_.epsilon ? lo : hi) = mid;
        }
        radius_ = hi;
    } else {
        radius_ = lo;
    }
    if (term_estimate() > cfg_.max_terms)
        throw TruncationFailure("theta truncation failure: term budget exceeded (lambda_min(Y) too small)",
                                theta_tail_bound(g, rho_, radius_));
}

double ThetaFunction::term_estimate() const {
    double count = 1;
    for (std::size_t i = 0; i < genus(); ++i)
        count *= 2 * radius_ / (std::sqrt(kPi) * tau_.cholesky()(i, i).real()) + 1;
    return count;
}

ThetaValue ThetaFunction::evaluate(std::span<const cplx> z) const {
    return evaluate(z, ThetaCharacteristic::zero(genus()));
}

ThetaValue ThetaFunction::evaluate(std::span<const cplx> z, const ThetaCharacteristic& ch) const {
    const std::size_t g = genus();
    require_genus(tau_, z.size(), "theta");
    require_genus(tau_, ch.genus(), "theta characteristic");
    ch.parity();
    const CMatrix& tz = tau_.Z();

    // theta[a,b](z) = exp(i pi a.tau.a + 2 pi i a.(z+b)) theta(z + b + tau a)
    cplx pre{0.0, 0.0};
    CVector zs(g);
    for (std::size_t i = 0; i < g; ++i) {
        cplx ta{0.0, 0.0};
        for (std::size_t j = 0; j < g; ++j) ta += tz(i, j) * ch.a[j];
        pre += kI * kPi * ch.a[i] * ta + 2.0 * kPi * kI * ch.a[i] * (z[i] + ch.b[i]);
        zs[i] = z[i] + ch.b[i] + ta;
    }

    std::vector<double> x(g), y(g), c(g, 0.0);
    for (std::size_t i = 0; i < g; ++i) {
        x[i] = zs[i].real();
        y[i] = zs[i].imag();
    }
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) c[i] += tau_.Y_inv()(i, j).real() * y[j];
    double ycy = 0;
    for (std::size_t i = 0; i < g; ++i) ycy += y[i] * c[i];

    cplx sum{0.0, 0.0};
    std::size_t terms = 0;
    const double r2 = radius_ * radius_ / kPi;
    enumerate_ellipsoid(tau_.cholesky(), c, r2, [&](const std::vector<long long>& n, double q) {
        double phase = 0;
        for (std::size_t i = 0; i < g; ++i) {
            const double ni = static_cast<double>(n[i]);
            double xn = 0;
            for (std::size_t j = 0; j < g; ++j) xn += tz(i, j).real() * static_cast<double>(n[j]);
            phase += kPi * ni * xn + 2 * kPi * ni * x[i];
        }
        sum += std::exp(-kPi * q) * cplx{std::cos(phase), std::sin(phase)};
        ++terms;
    });

    ThetaValue out;
    out.log_scale = kPi * ycy + pre.real();
    out.mantissa = sum * cplx{std::cos(pre.imag()), std::sin(pre.imag())};
    out.error_bound = theta_tail_bound(g, rho_, radius_);
    out.terms = terms;
    return out;
}

LatticeCoordinates lattice_coordinates(const SiegelPoint& tau, std::span<const cplx> v) {
    const std::size_t g = tau.genus();
    require_genus(tau, v.size(), "lattice coordinates");
    LatticeCoordinates lc{std::vector<double>(g, 0.0), std::vector<double>(g, 0.0)};
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) lc.m[i] += tau.Y_inv()(i, j).real() * v[j].imag();
    for (std::size_t i = 0; i < g; ++i) {
        lc.n[i] = v[i].real();
        for (std::size_t j = 0; j < g; ++j) lc.n[i] -= tau.Z()(i, j).real() * lc.m[j];
    }
    return lc;
}

double lattice_distance(const SiegelPoint& tau, std::span<const cplx> v) {
    const auto lc = lattice_coordinates(tau, v);
    double d = 0;
    for (std::size_t i = 0; i < lc.m.size(); ++i) {
        d = std::max(d, std::abs(lc.m[i] - std::round(lc.m[i])));
        d = std::max(d, std::abs(lc.n[i] - std::round(lc.n[i])));
    }
    return d;
}

CVector lattice_point(const SiegelPoint& tau, std::span<const double> m, std::span<const double> n) {
    const std::size_t g = tau.genus();
    if (m.size() != g || n.size() != g) throw PreconditionError("lattice point: length does not match genus");
    CVector v(g);
    for (std::size_t i = 0; i < g; ++i) {
        v[i] = n[i];
        for (std::size_t j = 0; j < g; ++j) v[i] += tau.Z()(i, j) * m[j];
    }
    return v;
}

namespace {

CVector sub(std::span<const cplx> u, std::span<const cplx> v) {
    CVector out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
    return out;
}

CVector add(std::span<const cplx> u, std::span<const cplx> v) {
    CVector out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + v[i];
    return out;
}

}  // namespace

cplx reduced_prime_form(std::span<const cplx> u, std::span<const cplx> v, const ThetaFunction& theta,
                        const ThetaCharacteristic& delta) {
    if (!delta.odd()) throw PreconditionError("reduced prime form needs an odd characteristic");
    if (u.size() != v.size()) throw PreconditionError("reduced prime form: length mismatch");
    return theta(sub(u, v), delta);
}

FayResult fay_residual(std::span<const cplx> w, const std::vector<CVector>& x, const std::vector<CVector>& y,
                       const ThetaFunction& theta, const ThetaCharacteristic& delta) {
    const std::size_t m = x.size();
    if (m < 2) throw PreconditionError("Fay identity needs m >= 2");
    if (y.size() != m) throw PreconditionError("Fay identity needs as many y as x");
    if (!delta.odd()) throw PreconditionError("Fay identity needs an odd characteristic");
    const auto& tau = theta.tau();

    std::vector<const CVector*> all;
    for (const auto& p : x) all.push_back(&p);
    for (const auto& p : y) all.push_back(&p);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (lattice_distance(tau, sub(*all[i], *all[j])) < 1e-4)
                throw PreconditionError("Fay identity: coincident points");

    const ThetaValue tw = theta.evaluate(w);
    if (tw.normalized_modulus() < kThetaZeroTolerance) throw Error("Fay identity: theta(w) vanishes");
    const cplx thw = tw.value();
    auto e = [&](const CVector& a, const CVector& b) { return reduced_prime_form(a, b, theta, delta); };

    CVector shifted(w.begin(), w.end());
    for (std::size_t i = 0; i < m; ++i) shifted = add(shifted, sub(x[i], y[i]));
    cplx lhs = theta(shifted) / thw;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) lhs *= e(x[i], x[j]) * e(y[i], y[j]);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) lhs /= e(x[i], y[j]);

    CMatrix mat(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) mat(i, j) = theta(add(w, sub(x[i], y[j]))) / (thw * e(x[i], y[j]));
    const double sign = (m * (m - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    const cplx rhs = sign * det(mat).value;

    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return {lhs, rhs, scale == 0 ? 0.0 : std::abs(lhs - rhs) / scale};
}

RiemannConstants find_riemann_constants(const ThetaFunction& theta, const std::vector<CVector>& probes) {
    if (probes.empty()) throw PreconditionError("Riemann constants search needs probes");
    const std::size_t g = theta.genus();
    const auto& tau = theta.tau();
    for (const auto& p : probes) require_genus(tau, p.size(), "Riemann constants probe");

    struct Candidate {
        double worst;
        std::size_t index;
    };
    std::vector<Candidate> cands;
    for (std::size_t k = 0; k < (std::size_t{1} << (2 * g)); ++k) {
        const auto ch = ThetaCharacteristic::from_index(g, k);
        const CVector h = lattice_point(tau, ch.a, ch.b);
        double worst = 0;
        for (const auto& p : probes) worst = std::max(worst, theta.evaluate(sub(p, h)).normalized_modulus());
        cands.push_back({worst, k});
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.worst < b.worst; });
    RiemannConstants rc;
    rc.characteristic = ThetaCharacteristic::from_index(g, cands[0].index);
    rc.h = lattice_point(tau, rc.characteristic.a, rc.characteristic.b);
    rc.best = cands[0].worst;
    rc.runner_up = cands.size() > 1 ? cands[1].worst : 0.0;
    if (!(rc.best < 1e-6 && rc.runner_up > 1e-2))
        throw Error("ambiguous constants (best " + std::to_string(rc.best) + ", runner-up " +
                    std::to_string(rc.runner_up) + ")");
    return rc;
}

}  // namespace petrisiegel
