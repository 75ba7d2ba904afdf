#include "petrisiegel/petri.hpp"

#include <algorithm>
#include <cmath>

#include "petrisiegel/errors.hpp"
#include "petrisiegel/parallel.hpp"

namespace petrisiegel {

namespace {

void require_label(std::size_t g, RelationLabel label) {
    if (g < 4) throw PreconditionError("relation labels need g >= 4");
    if (!(label.k >= 2 && label.k < label.l && label.l < g))
        throw PreconditionError("relation label " + label.str() + " outside 3 <= k < l <= g");
}

CMatrix replace_column(const CMatrix& m, std::size_t col, const CVector& v) {
    CMatrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, col) = v[i];
    return out;
}

}  // namespace

std::string RelationLabel::str() const { return "(" + std::to_string(k + 1) + "," + std::to_string(l + 1) + ")"; }

RelationInput make_relation_input(CMatrix omega_p, CMatrix omega_q) {
    const std::size_t g = omega_p.rows();
    if (!omega_p.square()) throw PreconditionError("relation input: omega(p) must be g x g");
    if (omega_q.rows() != g || omega_q.cols() != 2 * g - 2)
        throw PreconditionError("relation input: omega(q) must be g x (2g-2)");
    const LU lu(omega_p);
    if (lu.singular())
        throw DegenerateConfiguration("relation input: det omega(p) vanishes", lu.min_relative_pivot());
    RelationInput in{std::move(omega_p), std::move(omega_q), 0.0};
    in.p_condition = condition_estimate(in.omega_p, lu);
    return in;
}

RelationInput make_relation_input(const DifferentialBasis& omega, std::span<const CurvePoint> p,
                                  std::span<const CurvePoint> q) {
    if (omega.weight() != 1) throw PreconditionError("relation input: omega must be 1-differentials");
    const std::size_t g = omega.dimension();
    if (p.size() != g || q.size() != 2 * g - 2)
        throw PreconditionError("relation input: need g base points and 2g-2 probe points");
    return make_relation_input(omega.evaluate(p), omega.evaluate(q));
}

std::vector<RelationLabel> relation_labels(std::size_t g) {
    std::vector<RelationLabel> out;
    for (std::size_t k = 2; k < g; ++k)
        for (std::size_t l = k + 1; l < g; ++l) out.push_back({k, l});
    return out;
}

std::vector<CMatrix> a_tensor(const RelationInput& in) {
    const std::size_t g = in.genus();
    std::vector<CMatrix> a;
    a.reserve(in.probes());
    for (std::size_t r = 0; r < in.probes(); ++r) {
        const CVector qr = in.omega_q.col(r);
        CVector s(g);
        for (std::size_t i = 0; i < g; ++i) s[i] = det(replace_column(in.omega_p, i, qr)).value;
        CMatrix ar(g, g);
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < g; ++j) ar(i, j) = s[i] * s[j];
        a.push_back(std::move(ar));
    }
    return a;
}

CMatrix d_minors(const RelationInput& in) {
    const CMatrix pt = in.omega_p.transpose();
    const std::size_t g = in.genus();
    CMatrix d(g, g);
    for (std::size_t m = 0; m < g; ++m)
        for (std::size_t i = 0; i < g; ++i) d(m, i) = signed_minor(pt, m, i);
    return d;
}

std::vector<std::pair<std::size_t, std::size_t>> a_columns(std::size_t g, RelationLabel label) {
    require_label(g, label);
    std::vector<std::pair<std::size_t, std::size_t>> cols;
    for (std::size_t j = 1; j < g; ++j) cols.emplace_back(0, j);
    for (std::size_t j = 2; j < g; ++j) cols.emplace_back(1, j);
    cols.emplace_back(label.k, label.l);
    return cols;
}

CMatrix build_A(const std::vector<CMatrix>& a, std::size_t g, RelationLabel label) {
    const auto cols = a_columns(g, label);
    if (a.size() != cols.size()) throw PreconditionError("build_A: need 2g-2 probe points");
    CMatrix out(a.size(), cols.size());
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = a[r](cols[c].first, cols[c].second);
    return out;
}

CMatrix build_A(const RelationInput& in, RelationLabel label) { return build_A(a_tensor(in), in.genus(), label); }

CMatrix build_A_ij(const RelationInput& in, std::size_t r, RelationLabel label, std::size_t i, std::size_t j) {
    const std::size_t g = in.genus();
    if (r >= in.probes() || i >= g || j >= g) throw PreconditionError("build_A_ij: index out of range");
    CMatrix a = build_A(in, label);
    const CMatrix d = d_minors(in);
    const auto cols = a_columns(g, label);
    for (std::size_t c = 0; c < cols.size(); ++c) a(r, c) = d(cols[c].first, i) * d(cols[c].second, j);
    return a;
}

Theorem1Report verify_theorem1(const RelationInput& in, double tol, unsigned threads) {
    const auto a = a_tensor(in);
    const auto labels = relation_labels(in.genus());
    Theorem1Report rep;
    rep.tolerance = tol;
    rep.residuals = parallel_map<LabelResidual>(labels.size(), threads, [&](std::size_t n) {
        const CMatrix m = build_A(a, in.genus(), labels[n]);
        return LabelResidual{labels[n], laplace_ratio(m), det(m).ratio()};
    });
    for (const auto& r : rep.residuals) rep.max_ratio = std::max(rep.max_ratio, r.ratio);
    rep.pass = rep.max_ratio <= tol;
    return rep;
}

CMatrix block_matrix(const RelationInput& in, RelationLabel label) {
    const std::size_t g = in.genus();
    require_label(g, label);
    const PairIndexMap map(g);
    const std::size_t N = differential_dimension(g, 2);
    const CMatrix sigma_p = solve(in.omega_p, in.omega_p);
    const CMatrix sigma_q = solve(in.omega_p, in.omega_q);
    CMatrix out(N + 1, N + 1);
    auto fill_row = [&](std::size_t row, const CMatrix& s, std::size_t col) {
        for (std::size_t c = 0; c < N; ++c) out(row, c) = s(map.first(c), col) * s(map.second(c), col);
        out(row, N) = s(label.k, col) * s(label.l, col);
    };
    for (std::size_t i = 0; i < g; ++i) fill_row(i, sigma_p, i);
    for (std::size_t r = 0; r < in.probes(); ++r) fill_row(g + r, sigma_q, r);
    return out;
}

BlockCheck verify_block_singular(const RelationInput& in, RelationLabel label) {
    const std::size_t g = in.genus();
    const CMatrix b = block_matrix(in, label);
    BlockCheck out{laplace_ratio(b), det(b).ratio(), 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j)
            out.identity_deviation = std::max(out.identity_deviation, std::abs(b(i, j) - (i == j ? 1.0 : 0.0)));
        for (std::size_t j = g; j < b.cols(); ++j) out.zero_deviation = std::max(out.zero_deviation, std::abs(b(i, j)));
    }
    const CMatrix a = build_A(in, label);
    const cplx dp = det(in.omega_p).value;
    const cplx scale = 1.0 / (dp * dp);
    double diff = 0.0, mag = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) {
            const cplx expect = scale * a(r, c);
            diff = std::max(diff, std::abs(b(g + r, g + c) - expect));
            mag = std::max(mag, std::abs(expect));
        }
    out.lower_right_deviation = mag > 0.0 ? diff / mag : diff;
    return out;
}

RelationCoefficients relation_coefficients(const RelationInput& in, std::size_t r, RelationLabel label) {
    const std::size_t g = in.genus();
    if (r >= in.probes()) throw PreconditionError("relation_coefficients: row index out of range");
    const CMatrix a = build_A(in, label);
    const std::size_t last = a.cols() - 1;
    const auto cols = a_columns(g, label);

    // Row scaling leaves the ratios cof(r, c) / cof(r, last) unchanged.
    CMatrix scaled = a;
    for (std::size_t i = 0; i < scaled.rows(); ++i) {
        double m = 0.0;
        for (const auto& v : scaled.row(i)) m = std::max(m, std::abs(v));
        if (m > 0.0)
            for (auto& v : scaled.row(i)) v /= m;
    }
    const CMatrix all = cofactors(scaled);
    const double top = max_abs(all);
    const auto cof = all.row(r);
    const double delta_ratio = top > 0.0 ? std::abs(cof[last]) / top : 0.0;
    if (delta_ratio < 1e-10)
        throw DegenerateConfiguration("degenerate r: Delta_{r,last} vanishes; choose another r", delta_ratio);

    const CMatrix d = d_minors(in);
    CMatrix raw(g, g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            cplx s{};
            for (std::size_t c = 0; c < cols.size(); ++c) s += d(cols[c].first, i) * d(cols[c].second, j) * cof[c];
            raw(i, j) = s / cof[last];
        }
    CMatrix sym = 0.5 * (raw + raw.transpose());
    return {label, r, std::move(sym), std::move(raw), delta_ratio};
}

double relation_residual(const CMatrix& c, std::span<const cplx> w) {
    cplx s{};
    double mag = 0.0;
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) {
            const cplx t = c(i, j) * w[i] * w[j];
            s += t;
            mag += std::abs(t);
        }
    return mag > 0.0 ? std::abs(s) / mag : 0.0;
}

double coefficient_deviation(const CMatrix& a, const CMatrix& b) {
    const double s = std::max(max_abs(a), max_abs(b));
    return s > 0.0 ? max_abs(a - b) / s : 0.0;
}

CVector flatten_relation(const CMatrix& c, const PairIndexMap& map) {
    CVector out(map.size());
    for (std::size_t k = 0; k < map.size(); ++k) out[k] = map.multiplicity(k) * c(map.first(k), map.second(k));
    return out;
}

RelationInput perturb_probe_value(const RelationInput& in, double rel) {
    std::size_t bi = 0, br = 0;
    for (std::size_t i = 0; i < in.omega_q.rows(); ++i)
        for (std::size_t r = 0; r < in.omega_q.cols(); ++r)
            if (std::abs(in.omega_q(i, r)) > std::abs(in.omega_q(bi, br))) bi = i, br = r;
    RelationInput out = in;
    out.omega_q(bi, br) *= 1.0 + rel;
    return out;
}

RelationSet build_relation_set(const RelationInput& in, std::size_t r, unsigned threads) {
    RelationSet set;
    set.genus = in.genus();
    set.r = r;
    if (set.genus < 4) return set;
    set.labels = relation_labels(set.genus);
    set.relations = parallel_map<RelationCoefficients>(set.labels.size(), threads, [&](std::size_t n) {
        return relation_coefficients(in, r, set.labels[n]);
    });
    const PairIndexMap map(set.genus);
    CMatrix flat(map.size(), 0);
    std::size_t rank = 0;
    for (std::size_t n = 0; n < set.relations.size(); ++n) {
        CMatrix next(map.size(), n + 1);
        for (std::size_t i = 0; i < map.size(); ++i)
            for (std::size_t c = 0; c < n; ++c) next(i, c) = flat(i, c);
        const CVector f = flatten_relation(set.relations[n].c, map);
        for (std::size_t i = 0; i < map.size(); ++i) next(i, n) = f[i];
        const std::size_t nr = numerical_rank(next, 1e-8);
        if (nr == rank) set.deficient.push_back(set.labels[n]);
        rank = nr;
        flat = std::move(next);
    }
    set.rank = rank;
    return set;
}

}  // namespace petrisiegel
