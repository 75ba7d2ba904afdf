#include "petrisiegel/siegel.hpp"

#include <cmath>

#include "petrisiegel/errors.hpp"

namespace petrisiegel {

namespace {

CMatrix real_part(const CMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).real();
    return out;
}

CMatrix imag_part(const CMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).imag();
    return out;
}

CMatrix real_cholesky_upper(const CMatrix& y) {
    const std::size_t n = y.rows();
    CMatrix t(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = y(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= t(k, j).real() * t(k, j).real();
        if (!(d > 0.0)) throw PreconditionError("Siegel point: imaginary part is not positive definite");
        const double tjj = std::sqrt(d);
        t(j, j) = tjj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = y(j, i).real();
            for (std::size_t k = 0; k < j; ++k) s -= t(k, j).real() * t(k, i).real();
            t(j, i) = s / tjj;
        }
    }
    return t;
}

void require_spd(const CMatrix& y, const char* who) {
    if (!y.square()) throw PreconditionError(std::string(who) + ": matrix must be square");
    if (!check_positive_definite(y).positive_definite)
        throw PreconditionError(std::string(who) + ": matrix is not positive definite");
}

}  // namespace

SiegelPoint::SiegelPoint(CMatrix z) : z_(std::move(z)) {
    if (!z_.square() || z_.empty()) throw PreconditionError("Siegel point: Z must be square");
    if (frobenius_norm(z_ - z_.transpose()) > 1e-12 * frobenius_norm(z_))
        throw PreconditionError("Siegel point: Z is not symmetric");
    z_ = 0.5 * (z_ + z_.transpose());
    y_ = imag_part(z_);
    if (!check_positive_definite(y_).positive_definite)
        throw PreconditionError("Siegel point: imaginary part is not positive definite");
    chol_ = real_cholesky_upper(y_);
    y_inv_ = real_part(inverse(y_));
    y_inv_ = 0.5 * (y_inv_ + y_inv_.transpose());
}

SiegelPoint random_siegel_point(std::size_t g, Rng& rng, double y_shift) {
    CMatrix b(g, g), z(g, g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) b(i, j) = rng.uniform(-1.0, 1.0);
    const CMatrix y = b * b.transpose();
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i; j < g; ++j) {
            const double x = rng.uniform(-0.5, 0.5);
            const double im = y(i, j).real() + (i == j ? y_shift : 0.0);
            z(i, j) = z(j, i) = cplx(x, im);
        }
    return SiegelPoint(std::move(z));
}

SymplecticElement::SymplecticElement(std::size_t g, std::vector<long long> entries) : g_(g), m_(std::move(entries)) {
    if (g == 0 || m_.size() != 4 * g * g) throw PreconditionError("symplectic element: need 2g x 2g entries");
    if (!is_symplectic()) throw PreconditionError("symplectic element: M^T J M != J");
}

SymplecticElement SymplecticElement::identity(std::size_t g) {
    std::vector<long long> m(4 * g * g, 0);
    for (std::size_t i = 0; i < 2 * g; ++i) m[i * 2 * g + i] = 1;
    return SymplecticElement(g, std::move(m));
}

SymplecticElement SymplecticElement::shear(std::size_t g, const std::vector<long long>& s) {
    if (s.size() != g * g) throw PreconditionError("shear: S must be g x g");
    std::vector<long long> m(4 * g * g, 0);
    for (std::size_t i = 0; i < 2 * g; ++i) m[i * 2 * g + i] = 1;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) m[i * 2 * g + g + j] = s[i * g + j];
    return SymplecticElement(g, std::move(m));
}

SymplecticElement SymplecticElement::inversion(std::size_t g) {
    std::vector<long long> m(4 * g * g, 0);
    for (std::size_t i = 0; i < g; ++i) {
        m[i * 2 * g + g + i] = -1;
        m[(g + i) * 2 * g + i] = 1;
    }
    return SymplecticElement(g, std::move(m));
}

SymplecticElement SymplecticElement::elementary(std::size_t g, std::size_t i, std::size_t j, long long t) {
    if (i == j || i >= g || j >= g) throw PreconditionError("elementary: need i != j < g");
    std::vector<long long> m(4 * g * g, 0);
    for (std::size_t k = 0; k < 2 * g; ++k) m[k * 2 * g + k] = 1;
    m[i * 2 * g + j] = t;                // U = I + t E_ij
    m[(g + j) * 2 * g + g + i] = -t;     // U^-T = I - t E_ji
    return SymplecticElement(g, std::move(m));
}

SymplecticElement SymplecticElement::random(std::size_t g, Rng& rng, int factors) {
    SymplecticElement out = identity(g);
    for (int f = 0; f < factors; ++f) {
        const int kind = rng.integer(0, 2);
        if (kind == 0) {
            std::vector<long long> s(g * g, 0);
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = i; j < g; ++j) s[i * g + j] = s[j * g + i] = rng.integer(-1, 1);
            out = out * shear(g, s);
        } else if (kind == 1 && g > 1) {
            const std::size_t i = rng.index(g);
            std::size_t j = rng.index(g - 1);
            if (j >= i) ++j;
            out = out * elementary(g, i, j, rng.coin() ? 1 : -1);
        } else {
            out = out * inversion(g);
        }
    }
    return out;
}

bool SymplecticElement::is_symplectic() const {
    const std::size_t n = 2 * g_;
    auto j = [&](std::size_t r, std::size_t c) -> long long {
        if (r < g_ && c == r + g_) return 1;
        if (r >= g_ && c + g_ == r) return -1;
        return 0;
    };
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            long long s = 0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    const long long jab = j(a, b);
                    if (jab != 0) s += m_[a * n + r] * jab * m_[b * n + c];
                }
            if (s != j(r, c)) return false;
        }
    return true;
}

SymplecticElement SymplecticElement::operator*(const SymplecticElement& o) const {
    if (o.g_ != g_) throw PreconditionError("symplectic product: genus mismatch");
    const std::size_t n = 2 * g_;
    std::vector<long long> p(n * n, 0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t c = 0; c < n; ++c) p[r * n + c] += m_[r * n + k] * o.m_[k * n + c];
    return SymplecticElement(g_, std::move(p));
}

CMatrix SymplecticElement::block(std::size_t br, std::size_t bc) const {
    CMatrix out(g_, g_);
    for (std::size_t i = 0; i < g_; ++i)
        for (std::size_t j = 0; j < g_; ++j)
            out(i, j) = static_cast<double>((*this)(br * g_ + i, bc * g_ + j));
    return out;
}

ModularResult modular_transform(const SiegelPoint& tau, const SymplecticElement& m) {
    if (m.genus() != tau.genus()) throw PreconditionError("modular_transform: genus mismatch");
    const CMatrix ctd = m.C() * tau.Z() + m.D();
    const LU lu(ctd);
    if (lu.singular()) throw DegenerateConfiguration("modular_transform: C tau + D is singular", lu.min_relative_pivot());
    const CMatrix num = m.A() * tau.Z() + m.B();
    // X = num * ctd^-1  <=>  ctd^T X^T = num^T
    const CMatrix x = solve(ctd.transpose(), num.transpose()).transpose();
    if (frobenius_norm(x - x.transpose()) > 1e-10 * frobenius_norm(x))
        throw Error("modular_transform: image is not symmetric");
    return {SiegelPoint(0.5 * (x + x.transpose())), ctd.transpose(), ctd};
}

CMatrix siegel_metric(const CMatrix& y, const PairIndexMap& map) {
    require_spd(y, "siegel_metric");
    if (y.rows() != map.genus()) throw PreconditionError("siegel_metric: size mismatch");
    CMatrix yi = real_part(inverse(y));
    yi = 0.5 * (yi + yi.transpose());
    CMatrix g = sym_square(yi, map);
    for (std::size_t i = 0; i < map.size(); ++i)
        for (auto& v : g.row(i)) v = map.multiplicity(i) * v.real();
    return g;
}

cplx metric_form(const CMatrix& metric, const CMatrix& dz, const PairIndexMap& map) {
    cplx s{};
    for (std::size_t i = 0; i < map.size(); ++i)
        for (std::size_t j = 0; j < map.size(); ++j)
            s += metric(i, j) * dz(map.first(i), map.second(i)) * std::conj(dz(map.first(j), map.second(j)));
    return s;
}

cplx trace_form(const CMatrix& y, const CMatrix& dz) {
    const CMatrix yi = inverse(y);
    const CMatrix p = yi * dz * yi * dz.conj();
    cplx t{};
    for (std::size_t i = 0; i < p.rows(); ++i) t += p(i, i);
    return t;
}

cplx volume_minor(const CMatrix& tau2, const PairIndexMap& map, std::span<const std::size_t> rows,
                  std::span<const std::size_t> cols) {
    require_spd(tau2, "volume_minor");
    if (rows.size() != cols.size() || rows.empty() || rows.size() > map.size())
        throw PreconditionError("volume_minor: need 1 <= N <= M rows and as many columns");
    auto distinct = [&](std::span<const std::size_t> idx) {
        for (std::size_t a = 0; a < idx.size(); ++a) {
            if (idx[a] >= map.size()) return false;
            for (std::size_t b = a + 1; b < idx.size(); ++b)
                if (idx[a] == idx[b]) return false;
        }
        return true;
    };
    if (!distinct(rows) || !distinct(cols)) throw PreconditionError("volume_minor: indices must be distinct and < M");
    const CMatrix ss = sym_square(inverse(tau2), map);
    cplx v = det(submatrix(ss, rows, cols)).value;
    for (std::size_t r : rows) v *= map.multiplicity(r);
    return v;
}

CMatrix induced_metric_xi(const CMatrix& w, const CMatrix& tau2, const PairIndexMap& map) {
    require_spd(tau2, "induced_metric_xi");
    if (w.cols() != map.size()) throw PreconditionError("induced_metric_xi: w must be N x M");
    CMatrix mid = sym_square(inverse(tau2), map);
    for (std::size_t k = 0; k < map.size(); ++k)
        for (auto& v : mid.row(k)) v *= map.multiplicity(k);
    return w * mid * w.adjoint();
}

cplx bergman_kernel(std::span<const cplx> u, std::span<const cplx> v, const CMatrix& tau2) {
    if (u.size() != tau2.rows() || v.size() != tau2.rows())
        throw PreconditionError("bergman_kernel: vector length must equal genus");
    const CMatrix ti = inverse(tau2);
    cplx s{};
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) s += u[i] * ti(i, j) * std::conj(v[j]);
    return s;
}

cplx bergman_square_sum(std::span<const cplx> u, std::span<const cplx> v, const CMatrix& tau2,
                        const PairIndexMap& map) {
    const CMatrix tt = sym_square(inverse(tau2), map);
    const CVector uu = sym_vec(u, map), vv = sym_vec(v, map);
    cplx s{};
    for (std::size_t k = 0; k < map.size(); ++k)
        for (std::size_t l = 0; l < map.size(); ++l) s += map.multiplicity(k) * uu[k] * tt(k, l) * std::conj(vv[l]);
    return s;
}

DensityCheck ambient_volume_density(const CMatrix& y, const PairIndexMap& map) {
    const CMatrix g = siegel_metric(y, map);
    const double dy = det(y).value.real();
    const double gg = static_cast<double>(map.genus());
    const double m = static_cast<double>(map.size());
    return {det(g).value.real(), std::pow(2.0, m - gg) / std::pow(dy, gg + 1.0)};
}

double hermiticity_defect(const CMatrix& h) {
    const double n = frobenius_norm(h);
    return n > 0.0 ? frobenius_norm(h - h.adjoint()) / n : 0.0;
}

}  // namespace petrisiegel
