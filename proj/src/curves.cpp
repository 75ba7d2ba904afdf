#include "petrisiegel/curves.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>

#include "petrisiegel/errors.hpp"
#include "petrisiegel/random.hpp"

namespace petrisiegel {

namespace {

cplx ipow(cplx z, int k) {
    cplx r{1.0, 0.0};
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Models

PlaneCurve::PlaneCurve(int degree, std::vector<Term> terms) : degree_(degree) {
    if (degree < 4) throw PreconditionError("plane curve: degree must be at least 4");
    std::map<std::pair<int, int>, cplx> merged;
    for (const auto& t : terms) {
        if (t.x_power < 0 || t.y_power < 0 || t.x_power + t.y_power > degree)
            throw PreconditionError("plane curve: monomial exponent out of range");
        merged[{t.x_power, t.y_power}] += t.coeff;
    }
    bool top = false;
    for (const auto& [k, c] : merged) {
        if (c == cplx{}) continue;
        terms_.push_back({k.first, k.second, c});
        scale_ = std::max(scale_, std::abs(c));
        if (k.first + k.second == degree) top = true;
    }
    if (!top) throw PreconditionError("plane curve: no non-zero monomial of top degree");
}

PlaneCurve PlaneCurve::fermat(int degree) {
    return PlaneCurve(degree, {{degree, 0, 1.0}, {0, degree, 1.0}, {0, 0, 1.0}});
}

cplx PlaneCurve::F(cplx x, cplx y) const {
    cplx s{};
    for (const auto& t : terms_) s += t.coeff * ipow(x, t.x_power) * ipow(y, t.y_power);
    return s;
}

cplx PlaneCurve::Fx(cplx x, cplx y) const {
    cplx s{};
    for (const auto& t : terms_)
        if (t.x_power > 0) s += t.coeff * static_cast<double>(t.x_power) * ipow(x, t.x_power - 1) * ipow(y, t.y_power);
    return s;
}

cplx PlaneCurve::Fy(cplx x, cplx y) const {
    cplx s{};
    for (const auto& t : terms_)
        if (t.y_power > 0) s += t.coeff * static_cast<double>(t.y_power) * ipow(x, t.x_power) * ipow(y, t.y_power - 1);
    return s;
}

double PlaneCurve::relative_residual(cplx x, cplx y) const {
    cplx s{};
    double mag = 0.0;
    for (const auto& t : terms_) {
        const cplx v = t.coeff * ipow(x, t.x_power) * ipow(y, t.y_power);
        s += v;
        mag += std::abs(v);
    }
    return mag > 0.0 ? std::abs(s) / mag : std::abs(s);
}

CVector PlaneCurve::y_polynomial(cplx x) const {
    CVector c(static_cast<std::size_t>(degree_) + 1);
    for (const auto& t : terms_) c[static_cast<std::size_t>(t.y_power)] += t.coeff * ipow(x, t.x_power);
    return c;
}

cplx PlaneCurve::leading_y_coeff() const {
    for (const auto& t : terms_)
        if (t.y_power == degree_) return t.coeff;
    return {};
}

HyperellipticCurve::HyperellipticCurve(std::vector<cplx> branch_points, double min_separation)
    : branch_points_(std::move(branch_points)) {
    const std::size_t n = branch_points_.size();
    if (n < 3 || n % 2 == 0)
        throw PreconditionError("hyperelliptic curve: need an odd number (>= 3) of branch points");
    real_ = std::all_of(branch_points_.begin(), branch_points_.end(),
                        [](cplx e) { return e.imag() == 0.0; });
    if (real_) {
        for (std::size_t i = 1; i < n; ++i) {
            if (!(branch_points_[i].real() > branch_points_[i - 1].real()))
                throw PreconditionError("hyperelliptic curve: branch points must be strictly increasing");
            if (branch_points_[i].real() - branch_points_[i - 1].real() < min_separation)
                throw PreconditionError("hyperelliptic curve: branch points closer than the minimum separation");
        }
    } else {
        if (genus() != 1)
            throw PreconditionError("hyperelliptic curve: complex branch points are supported only in genus 1");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::abs(branch_points_[i] - branch_points_[j]) < min_separation)
                    throw PreconditionError("hyperelliptic curve: branch points closer than the minimum separation");
    }
}

HyperellipticCurve HyperellipticCurve::real(const std::vector<double>& branch_points, double min_separation) {
    return HyperellipticCurve(std::vector<cplx>(branch_points.begin(), branch_points.end()), min_separation);
}

cplx HyperellipticCurve::f(cplx x) const {
    cplx v{1.0, 0.0};
    for (const auto& e : branch_points_) v *= (x - e);
    return v;
}

double HyperellipticCurve::branch_distance(cplx x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& e : branch_points_) d = std::min(d, std::abs(x - e));
    return d;
}

std::size_t genus_of(const CurveModel& model) {
    return std::visit([](const auto& m) { return m.genus(); }, model);
}

std::string describe(const CurveModel& model) {
    if (const auto* p = std::get_if<PlaneCurve>(&model))
        return "plane curve of degree " + std::to_string(p->degree()) + ", genus " + std::to_string(p->genus());
    const auto& h = std::get<HyperellipticCurve>(model);
    return "hyperelliptic curve of genus " + std::to_string(h.genus());
}

// ---------------------------------------------------------------------------
// Points

CurvePoint make_point(const CurveModel& model, cplx x, cplx y) {
    CurvePoint p{x, y, Chart::X};
    if (const auto* c = std::get_if<PlaneCurve>(&model)) {
        const double fx = std::abs(c->Fx(x, y)), fy = std::abs(c->Fy(x, y));
        if (fy < kChartSwitch * (fx + fy)) p.chart = Chart::Y;
    }
    return p;
}

void require_on_curve(const CurveModel& model, const CurvePoint& p) {
    if (const auto* c = std::get_if<PlaneCurve>(&model)) {
        const double r = c->relative_residual(p.x, p.y);
        if (!(r <= kOnCurveTolerance))
            throw OffCurve("point is not on the plane curve (relative residual " + std::to_string(r) + ")");
        return;
    }
    const auto& h = std::get<HyperellipticCurve>(model);
    const cplx fx = h.f(p.x);
    const double scale = std::max({std::norm(p.y), std::abs(fx), 1e-300});
    const double r = std::abs(p.y * p.y - fx) / scale;
    if (!(r <= kOnCurveTolerance))
        throw OffCurve("point is not on the hyperelliptic curve (relative residual " + std::to_string(r) + ")");
}

CVector polynomial_roots(const CVector& coeffs_in) {
    CVector coeffs = coeffs_in;
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    while (!coeffs.empty() && std::abs(coeffs.back()) <= 1e-14 * scale) coeffs.pop_back();
    if (coeffs.size() < 2) return {};
    const std::size_t n = coeffs.size() - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 1; i < n; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -coeffs[i] / coeffs[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    CVector roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx z = solver.eigenvalues()(static_cast<Eigen::Index>(i));
        cplx p{}, dp{};
        for (std::size_t k = coeffs.size(); k-- > 0;) {
            dp = dp * z + p;
            p = p * z + coeffs[k];
        }
        if (dp != cplx{}) z -= p / dp;
        roots[i] = z;
    }
    return roots;
}

std::vector<CurvePoint> sample_points(const CurveModel& model, std::size_t count, std::uint64_t seed,
                                      SampleMode mode, const SampleOptions& opts) {
    if (count == 0) throw PreconditionError("sample_points: count must be at least 1");
    Rng rng(seed);
    std::vector<CurvePoint> out;
    out.reserve(count);
    auto draw_x = [&]() -> cplx {
        if (mode == SampleMode::Real) return {rng.uniform(-opts.radius, opts.radius), 0.0};
        return rng.disk(opts.radius);
    };
    auto distinct = [&](cplx x) {
        return std::all_of(out.begin(), out.end(),
                           [&](const CurvePoint& q) { return std::abs(q.x - x) >= opts.min_separation; });
    };

    for (std::size_t k = 0; k < count; ++k) {
        std::string last_cause = "none";
        bool ok = false;
        for (int attempt = 0; attempt < opts.max_rejections && !ok; ++attempt) {
            const cplx x = draw_x();
            if (!distinct(x)) {
                last_cause = "duplicate";
                continue;
            }
            if (const auto* c = std::get_if<PlaneCurve>(&model)) {
                const CVector roots = polynomial_roots(c->y_polynomial(x));
                if (roots.size() != static_cast<std::size_t>(c->degree())) {
                    last_cause = "point at infinity over this x";
                    continue;
                }
                const cplx y = roots[rng.index(roots.size())];
                const double fx = std::abs(c->Fx(x, y)), fy = std::abs(c->Fy(x, y));
                const double grad_scale =
                    c->coefficient_scale() * std::pow(1.0 + std::abs(x) + std::abs(y), c->degree() - 1);
                if (fx + fy < 1e-8 * grad_scale) {
                    last_cause = "near-singular chart";
                    continue;
                }
                const CurvePoint p = make_point(model, x, y);
                if (c->relative_residual(x, y) > kOnCurveTolerance) {
                    last_cause = "root polish failed";
                    continue;
                }
                out.push_back(p);
                ok = true;
            } else {
                const auto& h = std::get<HyperellipticCurve>(model);
                if (h.branch_distance(x) < kBranchAvoidance) {
                    last_cause = "near-branch-point";
                    continue;
                }
                const double sheet = rng.coin() ? 1.0 : -1.0;
                out.push_back({x, sheet * std::sqrt(h.f(x)), Chart::X});
                ok = true;
            }
        }
        if (!ok) throw SamplingFailure("sample_points: rejection budget exhausted; last cause: " + last_cause);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Differential bases

std::size_t differential_dimension(std::size_t genus, int weight) {
    if (weight < 1) throw PreconditionError("differential weight must be at least 1");
    if (weight == 1) return genus;
    return static_cast<std::size_t>(2 * weight - 1) * (genus - 1);
}

DifferentialBasis::DifferentialBasis(std::shared_ptr<const CurveModel> model, int weight,
                                     std::vector<Monomial> monos, CMatrix transform)
    : model_(std::move(model)), weight_(weight), monomials_(std::move(monos)), transform_(std::move(transform)) {}

DifferentialBasis DifferentialBasis::monomial(std::shared_ptr<const CurveModel> model, int weight) {
    if (!model) throw PreconditionError("differential basis: null model");
    if (weight < 1) throw PreconditionError("differential basis: weight must be at least 1");
    const std::size_t g = genus_of(*model);
    std::vector<Monomial> monos;
    if (const auto* c = std::get_if<PlaneCurve>(model.get())) {
        const int d = c->degree();
        const int top = weight * (d - 3);
        if (top >= d && c->leading_y_coeff() == cplx{})
            throw PreconditionError("differential basis: weight >= 2 needs a non-zero y^d coefficient");
        for (int total = 0; total <= top; ++total)
            for (int b = 0; b <= total; ++b)
                if (b < d) monos.push_back({total - b, b});
    } else {
        const int gi = static_cast<int>(g);
        for (int j = 0; j <= weight * (gi - 1); ++j) monos.push_back({j, weight});
        for (int j = 0; j <= weight * (gi - 1) - (gi + 1); ++j) monos.push_back({j, weight - 1});
    }
    if (monos.size() != differential_dimension(g, weight))
        throw Error("differential basis: monomial count does not match the Riemann-Roch dimension");
    const std::size_t n = monos.size();
    return DifferentialBasis(std::move(model), weight, std::move(monos), CMatrix::identity(n));
}

CVector DifferentialBasis::evaluate_monomials(const CurvePoint& p) const {
    require_on_curve(*model_, p);
    CVector v(monomials_.size());
    if (const auto* c = std::get_if<PlaneCurve>(model_.get())) {
        const double mag = c->coefficient_scale() * std::pow(1.0 + std::abs(p.x) + std::abs(p.y), c->degree() - 1);
        cplx denom;
        if (p.chart == Chart::X) {
            denom = c->Fy(p.x, p.y);
        } else {
            denom = -c->Fx(p.x, p.y);
        }
        if (std::abs(denom) < 1e-12 * mag)
            throw ChartBreakdown("chart breakdown: vanishing chart denominator at (" + std::to_string(p.x.real()) +
                                 "," + std::to_string(p.x.imag()) + ")");
        const cplx scale = 1.0 / ipow(denom, weight_);
        for (std::size_t k = 0; k < monomials_.size(); ++k)
            v[k] = ipow(p.x, monomials_[k].x_power) * ipow(p.y, monomials_[k].y_power) * scale;
        return v;
    }
    if (p.chart != Chart::X) throw ChartBreakdown("chart breakdown: hyperelliptic models use the x-chart only");
    const auto& h = std::get<HyperellipticCurve>(*model_);
    const double mag = std::pow(1.0 + std::abs(p.x), static_cast<double>(h.branch_points().size()) / 2.0);
    if (std::abs(p.y) < 1e-10 * mag)
        throw ChartBreakdown("chart breakdown: point too close to a branch point (x = " + std::to_string(p.x.real()) +
                             "," + std::to_string(p.x.imag()) + ")");
    const cplx inv_y = 1.0 / p.y;
    for (std::size_t k = 0; k < monomials_.size(); ++k)
        v[k] = ipow(p.x, monomials_[k].x_power) * ipow(inv_y, monomials_[k].y_power);
    return v;
}

CVector DifferentialBasis::evaluate(const CurvePoint& p) const {
    const CVector m = evaluate_monomials(p);
    return transform_ * std::span<const cplx>(m);
}

CMatrix DifferentialBasis::evaluate(std::span<const CurvePoint> points) const {
    CMatrix out(dimension(), points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
        const CVector v = evaluate(points[j]);
        for (std::size_t i = 0; i < v.size(); ++i) out(i, j) = v[i];
    }
    return out;
}

DifferentialBasis DifferentialBasis::transformed(const CMatrix& t) const {
    if (t.cols() != dimension()) throw PreconditionError("basis transform: column count must equal dimension");
    return DifferentialBasis(model_, weight_, monomials_, t * transform_);
}

std::string DifferentialBasis::monomial_label(std::size_t k) const {
    const auto& m = monomials_.at(k);
    const std::string n = std::to_string(weight_);
    if (std::holds_alternative<PlaneCurve>(*model_))
        return "x^" + std::to_string(m.x_power) + " y^" + std::to_string(m.y_power) + " (dx)^" + n + "/Fy^" + n;
    return "x^" + std::to_string(m.x_power) + " (dx)^" + n + "/y^" + std::to_string(m.y_power);
}

GammaBasis gamma_basis(const DifferentialBasis& phi, std::span<const CurvePoint> anchors) {
    if (anchors.size() != phi.dimension())
        throw PreconditionError("gamma_basis: need exactly N_n anchor points");
    const CMatrix at = phi.evaluate(anchors);
    const LU lu(at);
    const double cond = condition_estimate(at, lu);
    if (lu.singular() || !(cond <= kAnchorConditionLimit))
        throw NonGenericAnchors("non-generic anchors: anchor evaluation matrix is ill-conditioned", cond);
    return {phi.transformed(lu.inverse()), cond};
}

// ---------------------------------------------------------------------------
// Petri basis

PetriBasis::PetriBasis(DifferentialBasis omega, std::vector<CurvePoint> anchors, std::uint64_t certificate_seed)
    : omega_(std::move(omega)), anchors_(std::move(anchors)), map_(omega_.dimension()) {
    if (omega_.weight() != 1) throw PreconditionError("petri basis: omega must be a basis of 1-differentials");
    const std::size_t g = omega_.dimension();
    if (anchors_.size() != g) throw PreconditionError("petri basis: need exactly g anchors");
    const CMatrix w = omega_.evaluate(anchors_);
    const LU lu(w);
    anchor_condition_ = condition_estimate(w, lu);
    if (lu.singular() || !(anchor_condition_ <= kAnchorConditionLimit))
        throw NonGenericAnchors("non-generic anchors: det omega(p) vanishes to tolerance", anchor_condition_);
    sigma_coeffs_ = lu.inverse();
    layout_ = petri_layout_to_pair_index(map_);

    const std::size_t N = quadratic_dimension();
    if (N > 0) {
        const auto fresh = sample_points(omega_.model(), N, certificate_seed, SampleMode::Complex);
        rank_ = numerical_rank(v_matrix(fresh), 1e-8);
    }
}

CVector PetriBasis::sigma(const CurvePoint& z) const {
    const CVector w = omega_.evaluate(z);
    return sigma_coeffs_ * std::span<const cplx>(w);
}

CVector PetriBasis::v_all(const CurvePoint& z) const {
    const CVector s = sigma(z);
    CVector v(layout_.size());
    for (std::size_t pos = 0; pos < layout_.size(); ++pos) {
        const auto [a, b] = map_[layout_[pos]];
        v[pos] = s[a] * s[b];
    }
    return v;
}

CVector PetriBasis::omega_products(const CurvePoint& z) const {
    const CVector w = omega_.evaluate(z);
    return sym_vec(w, map_);
}

CMatrix PetriBasis::v_matrix(std::span<const CurvePoint> points) const {
    const std::size_t N = quadratic_dimension();
    CMatrix out(N, points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
        const CVector v = v_all(points[j]);
        for (std::size_t i = 0; i < N; ++i) out(i, j) = v[i];
    }
    return out;
}

PetriBasis petri_basis(const DifferentialBasis& omega, std::span<const CurvePoint> anchors,
                       std::uint64_t certificate_seed) {
    PetriBasis pb(omega, std::vector<CurvePoint>(anchors.begin(), anchors.end()), certificate_seed);
    if (std::holds_alternative<PlaneCurve>(omega.model()) && pb.rank_certificate() < pb.quadratic_dimension())
        throw Error("unexpected rank deficiency: Petri products span " + std::to_string(pb.rank_certificate()) +
                    " < " + std::to_string(pb.quadratic_dimension()) + " dimensions on a plane curve");
    return pb;
}

CMatrix expand_in_petri_basis(const PetriBasis& petri, std::span<const CurvePoint> nodes, const CMatrix& values) {
    const std::size_t N = petri.quadratic_dimension();
    if (nodes.size() != N) throw PreconditionError("expansion: need exactly N nodes");
    if (values.cols() != N) throw PreconditionError("expansion: values must have one column per node");
    const CMatrix v = petri.v_matrix(nodes);
    return solve(v.transpose(), values.transpose());
}

CMatrix expansion_coeffs(const PetriBasis& petri, std::span<const CurvePoint> nodes) {
    const std::size_t M = petri.pairs().size();
    CMatrix values(M, nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const CVector ww = petri.omega_products(nodes[k]);
        for (std::size_t i = 0; i < M; ++i) values(i, k) = ww[i];
    }
    return expand_in_petri_basis(petri, nodes, values);
}

}  // namespace petrisiegel
