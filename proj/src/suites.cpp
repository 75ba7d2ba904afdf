#include "petrisiegel/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "petrisiegel/errors.hpp"
#include "petrisiegel/jacobian.hpp"
#include "petrisiegel/parallel.hpp"
#include "petrisiegel/petri.hpp"
#include "petrisiegel/random.hpp"
#include "petrisiegel/siegel.hpp"
#include "petrisiegel/sym_index.hpp"
#include "petrisiegel/theta.hpp"

namespace petrisiegel {

namespace {

constexpr double kPi = std::numbers::pi;

double rel(cplx a, cplx b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0 ? 0.0 : std::abs(a - b) / s;
}

double rel_matrix(const CMatrix& a, const CMatrix& b) {
    const double s = std::max(frobenius_norm(a), frobenius_norm(b));
    return s == 0 ? 0.0 : frobenius_norm(a - b) / s;
}

CMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
    CMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.complex_normal();
    return m;
}

CVector random_vector(Rng& rng, std::size_t n) {
    CVector v(n);
    for (auto& x : v) x = rng.complex_normal();
    return v;
}

CMatrix random_symmetric(Rng& rng, std::size_t n) {
    const CMatrix m = random_matrix(rng, n, n);
    return 0.5 * (m + m.transpose());
}

CMatrix random_spd(Rng& rng, std::size_t n) {
    CMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = rng.normal();
    CMatrix m = b * b.transpose();
    for (std::size_t i = 0; i < n; ++i) m(i, i) += static_cast<double>(n);
    return m;
}

SiegelPoint diag_dominant_point(Rng& rng, std::size_t g) {
    CMatrix z(g, g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i; j < g; ++j) {
            const cplx v{rng.uniform(-0.5, 0.5), i == j ? rng.uniform(0.8, 1.5) : rng.uniform(-0.2, 0.2)};
            z(i, j) = v;
            z(j, i) = v;
        }
    return SiegelPoint(z);
}

CVector random_cell_point(Rng& rng, const SiegelPoint& tau) {
    std::vector<double> m(tau.genus()), n(tau.genus());
    for (std::size_t i = 0; i < tau.genus(); ++i) {
        m[i] = rng.uniform(-0.5, 0.5);
        n[i] = rng.uniform(-0.5, 0.5);
    }
    return lattice_point(tau, m, n);
}

CVector lin(double a, const CVector& u, double b, const CVector& v) {
    CVector out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = a * u[i] + b * v[i];
    return out;
}

std::string fixed(cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f%+.12fi", z.real(), z.imag());
    return buf;
}

const char* kQuintic = R"json({
  "name": "fermat-quintic",
  "type": "plane",
  "degree": 5,
  "coeffs": [
    [5, 0, 1.0, 0.0],
    [0, 5, 1.0, 0.0],
    [0, 0, 1.0, 0.0]
  ]
}
)json";
const char* kHyperG4 = R"json({
  "name": "hyperelliptic-g4",
  "type": "hyperelliptic",
  "branch_points": [-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0]
}
)json";
const char* kGenus2 = R"json({
  "name": "genus2-x(x^2-1)(x^2-4)",
  "type": "hyperelliptic",
  "branch_points": [-2.0, -1.0, 0.0, 1.0, 2.0]
}
)json";
const char* kGenus3 = R"json({
  "name": "genus3",
  "type": "hyperelliptic",
  "branch_points": [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.5]
}
)json";
const char* kLemniscatic = R"json({
  "name": "lemniscatic",
  "type": "hyperelliptic",
  "branch_points": [-1.0, 0.0, 1.0]
}
)json";
const char* kEquianharmonic = R"json({
  "name": "equianharmonic",
  "type": "hyperelliptic",
  "branch_points": [[1.0, 0.0], [-0.5, 0.8660254037844386], [-0.5, -0.8660254037844386]]
}
)json";

void describe_spec(VerificationReport& rep, const CurveSpec& spec) {
    rep.header.emplace_back("spec", spec.source);
    rep.header.emplace_back("digest", spec.digest);
    rep.header.emplace_back("curve", spec.name);
}

// ---------------------------------------------------------------------------
// Petri suite

struct PetriSetup {
    DifferentialBasis omega;
    std::vector<CurvePoint> p, q;
    RelationInput in;
};

PetriSetup petri_setup(const CurveSpec& spec, std::uint64_t seed) {
    const std::size_t g = genus_of(*spec.model);
    auto omega = DifferentialBasis::monomial(spec.model, 1);
    const auto pts = sample_points(*spec.model, 3 * g - 2, seed, SampleMode::Real);
    std::vector<CurvePoint> p(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(g));
    std::vector<CurvePoint> q(pts.begin() + static_cast<std::ptrdiff_t>(g), pts.end());
    auto in = make_relation_input(omega, p, q);
    return {std::move(omega), std::move(p), std::move(q), std::move(in)};
}

struct SeedResult {
    double ratio = std::nan("");
    double control = std::nan("");
    std::string error;
};

}  // namespace

CurveSpec builtin_spec(const std::string& name) {
    const char* text = nullptr;
    if (name == "fermat_quintic") text = kQuintic;
    if (name == "hyperelliptic_g4") text = kHyperG4;
    if (name == "genus2") text = kGenus2;
    if (name == "genus3") text = kGenus3;
    if (name == "lemniscatic") text = kLemniscatic;
    if (name == "equianharmonic") text = kEquianharmonic;
    if (!text) throw PreconditionError("unknown built-in curve '" + name + "'");
    return parse_curve_spec(text, "builtin:" + name);
}

VerificationReport verify_petri(const CurveSpec& spec, const SuiteOptions& opts) {
    VerificationReport rep;
    rep.command = "verify-petri";
    rep.seed = opts.seed;
    describe_spec(rep, spec);
    const auto& tol = opts.tol;
    const std::size_t g = genus_of(*spec.model);
    const bool plane = std::holds_alternative<PlaneCurve>(*spec.model);
    if (g < 3) throw PreconditionError("verify-petri needs genus >= 3");
    const std::size_t labels = relation_labels(g).size();

    constexpr std::size_t kSeeds = 5;
    const auto seeds = parallel_map<SeedResult>(kSeeds, opts.threads, [&](std::size_t i) {
        SeedResult r;
        try {
            const auto s = petri_setup(spec, opts.seed + i);
            const RelationInput in = opts.force_fail && i == 0 ? perturb_probe_value(s.in, 1e-4) : s.in;
            r.ratio = verify_theorem1(in, tol["determinant"]).max_ratio;
            r.control = labels == 0 ? std::nan("") : verify_theorem1(perturb_probe_value(s.in, 1e-4)).max_ratio;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        return r;
    });
    for (std::size_t i = 0; i < kSeeds; ++i) {
        const std::string tag = "[seed=" + std::to_string(opts.seed + i) + "]";
        auto rec = make_check("determinant" + tag, "determinantal-vanishing", seeds[i].ratio, tol["determinant"]);
        rec.note = seeds[i].error;
        rep.add(rec);
        if (labels == 0) {
            rep.add(make_warning("determinant.control" + tag, "determinantal-vanishing", "no labels below genus 4"));
        } else if (!plane) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "%.3e", seeds[i].control);
            rep.add(make_warning("determinant.control" + tag, "determinantal-vanishing",
                                 std::string("hyperelliptic: each matrix has rank defect above one, so a single "
                                             "perturbed entry leaves it singular (perturbed ratio ") +
                                     buf + ")"));
        } else {
            auto c = make_check("determinant.control" + tag, "determinantal-vanishing", seeds[i].control, tol["control"],
                                Bound::Lower);
            c.note = seeds[i].error;
            rep.add(c);
        }
    }
    if (labels == 0) rep.notes.push_back("genus " + std::to_string(g) + ": no relations (empty label set)");

    const std::size_t expected_rank = plane ? 3 * g - 3 : 2 * g - 1;
    rep.run("petri.rank_certificate", "petri-basis-rank", 0.0, Bound::Upper, [&] {
        const auto omega = DifferentialBasis::monomial(spec.model, 1);
        const auto anchors = sample_points(*spec.model, g, opts.seed + 31, SampleMode::Complex);
        const PetriBasis pb(omega, anchors, opts.seed + 37);
        return std::abs(static_cast<double>(pb.rank_certificate()) - static_cast<double>(expected_rank));
    });
    rep.notes.push_back(std::string("rank certificate expected ") + std::to_string(expected_rank) +
                        (plane ? " (3g-3, non-hyperelliptic)" : " (2g-1, hyperelliptic)"));

    if (!plane) {
        const std::string why = "hyperelliptic: quadratic products span 2g-1 < 3g-3, so the v-basis and the "
                                "relation coefficients are not unique";
        rep.add(make_warning("block", "block-singularity", why));
        rep.add(make_warning("relations", "relation-coefficients", why));
        rep.add(make_warning("expansion", "quadratic-expansion", why));
        return rep;
    }

    const auto base = petri_setup(spec, opts.seed);
    rep.run("block", "block-singularity", tol["block"], Bound::Upper, [&] {
        double worst = 0;
        for (const auto& label : relation_labels(g)) worst = std::max(worst, verify_block_singular(base.in, label).ratio);
        return worst;
    });

    if (labels > 0) {
        const auto q2 = sample_points(*spec.model, 2 * g - 2, opts.seed + 7919, SampleMode::Real);
        const auto in_q2 = make_relation_input(base.omega, base.p, q2);
        const auto fresh = sample_points(*spec.model, 20, opts.seed + 104729, SampleMode::Complex);
        struct LabelResult {
            double ann = std::nan(""), qdev = std::nan(""), rdev = std::nan("");
            std::string error;
        };
        const auto lbls = relation_labels(g);
        const auto res = parallel_map<LabelResult>(lbls.size(), opts.threads, [&](std::size_t k) {
            LabelResult lr;
            try {
                const auto rc = relation_coefficients(base.in, 0, lbls[k]);
                lr.ann = 0;
                for (const auto& z : fresh) lr.ann = std::max(lr.ann, relation_residual(rc.c, base.omega.evaluate(z)));
                lr.qdev = coefficient_deviation(rc.c, relation_coefficients(in_q2, 0, lbls[k]).c);
                lr.rdev = 0;
                for (std::size_t r = 1; r < base.in.probes(); ++r)
                    lr.rdev = std::max(lr.rdev, coefficient_deviation(rc.c, relation_coefficients(base.in, r, lbls[k]).c));
            } catch (const std::exception& e) {
                lr.error = e.what();
            }
            return lr;
        });
        for (std::size_t k = 0; k < lbls.size(); ++k) {
            const std::string name = "relation" + lbls[k].str();
            for (auto rec : {make_check(name + ".annihilation", "relation-coefficients", res[k].ann, tol["annihilation"]),
                             make_check(name + ".q_independence", "relation-coefficients", res[k].qdev,
                                        tol["q_independence"]),
                             make_check(name + ".r_independence", "relation-coefficients", res[k].rdev,
                                        tol["r_independence"])}) {
                rec.note = res[k].error;
                rep.add(rec);
            }
        }
        rep.run("relations.rank", "relation-rank", 0.0, Bound::Upper, [&] {
            const auto set = build_relation_set(base.in, 0, opts.threads);
            rep.notes.push_back("relations=" + std::to_string(set.relations.size()) +
                                " rank=" + std::to_string(set.rank));
            return std::abs(static_cast<double>(set.rank) - static_cast<double>(labels));
        });
    }

    const auto omega = DifferentialBasis::monomial(spec.model, 1);
    const auto anchors = sample_points(*spec.model, g, opts.seed + 41, SampleMode::Complex);
    const std::size_t n = 3 * g - 3;
    double node_dev = std::nan(""), expansion = std::nan("");
    std::string error;
    try {
        const PetriBasis pb = petri_basis(omega, anchors, opts.seed + 43);
        const auto nodes1 = sample_points(*spec.model, n, opts.seed + 47, SampleMode::Complex);
        const auto nodes2 = sample_points(*spec.model, n, opts.seed + 53, SampleMode::Complex);
        const CMatrix w1 = expansion_coeffs(pb, nodes1);
        node_dev = rel_matrix(w1, expansion_coeffs(pb, nodes2));
        expansion = 0;
        for (const auto& z : sample_points(*spec.model, 10, opts.seed + 59, SampleMode::Complex)) {
            const CVector ww = pb.omega_products(z), v = pb.v_all(z);
            for (std::size_t i = 0; i < ww.size(); ++i) {
                cplx s{};
                double scale = std::abs(ww[i]);
                for (std::size_t j = 0; j < n; ++j) {
                    s += w1(j, i) * v[j];
                    scale = std::max(scale, std::abs(w1(j, i) * v[j]));
                }
                expansion = std::max(expansion, std::abs(ww[i] - s) / scale);
            }
        }
    } catch (const std::exception& e) {
        error = e.what();
    }
    auto r1 = make_check("expansion.residual", "quadratic-expansion", expansion, tol["expansion"]);
    auto r2 = make_check("expansion.node_independence", "quadratic-expansion", node_dev, tol["node_independence"]);
    r1.note = r2.note = error;
    rep.add(r1);
    rep.add(r2);
    return rep;
}

// ---------------------------------------------------------------------------
// Siegel suite

VerificationReport verify_siegel(std::size_t g, const SuiteOptions& opts) {
    if (g < 1 || g > 8) throw PreconditionError("verify-siegel: genus must be between 1 and 8");
    VerificationReport rep;
    rep.command = "verify-siegel";
    rep.seed = opts.seed;
    rep.header.emplace_back("genus", std::to_string(g));
    const auto& tol = opts.tol;
    const auto map = build_pair_index(g);
    constexpr int kTrials = 10;

    rep.run("metric_trace", "siegel-metric", tol["metric_trace"], Bound::Upper, [&] {
        Rng rng(opts.seed);
        double worst = 0;
        for (int t = 0; t < kTrials; ++t) {
            const auto z = random_siegel_point(g, rng);
            const CMatrix dz = random_symmetric(rng, g);
            CMatrix dzt = dz;
            if (opts.force_fail && t == 0) dzt(0, 0) *= 1.0 + 1e-6;
            worst = std::max(worst, rel(metric_form(siegel_metric(z.Y(), map), dz, map), trace_form(z.Y(), dzt)));
        }
        return worst;
    });
    rep.run("sym_square.functoriality", "sym-square", tol["functoriality"], Bound::Upper, [&] {
        Rng rng(opts.seed + 1);
        double worst = 0;
        for (int t = 0; t < kTrials; ++t) {
            const CMatrix a = random_matrix(rng, g, g), b = random_matrix(rng, g, g);
            worst = std::max(worst, rel_matrix(sym_square(a * b, map), sym_square(a, map) * sym_square(b, map)));
        }
        return worst;
    });
    rep.run("sym_square.det", "sym-square", tol["sym_det"], Bound::Upper, [&] {
        Rng rng(opts.seed + 2);
        double worst = 0;
        for (int t = 0; t < kTrials; ++t) {
            const CMatrix a = random_matrix(rng, g, g);
            worst = std::max(worst, rel(det(sym_square(a, map)).value,
                                        std::pow(det(a).value, static_cast<double>(g + 1))));
        }
        return worst;
    });
    rep.run("bergman_square", "bergman-square", tol["bergman"], Bound::Upper, [&] {
        Rng rng(opts.seed + 3);
        double worst = 0;
        for (int t = 0; t < kTrials; ++t) {
            const CMatrix t2 = random_spd(rng, g);
            const CVector u = random_vector(rng, g), v = random_vector(rng, g);
            const cplx b = bergman_kernel(u, v, t2);
            worst = std::max(worst, rel(bergman_square_sum(u, v, t2, map), b * b));
        }
        return worst;
    });
    rep.run("volume_minor.permutation_g2", "volume-minor", tol["permutation"], Bound::Upper, [&] {
        Rng rng(opts.seed + 4);
        const auto map2 = build_pair_index(2);
        const CMatrix y = random_spd(rng, 2);
        const CMatrix gm = siegel_metric(y, map2);
        const std::vector<std::size_t> all{0, 1, 2};
        auto sign = [](const std::vector<std::size_t>& p) {
            int s = 1;
            for (std::size_t i = 0; i < p.size(); ++i)
                for (std::size_t j = i + 1; j < p.size(); ++j)
                    if (p[i] > p[j]) s = -s;
            return s;
        };
        std::vector<std::size_t> r{0, 1, 2};
        cplx total{};
        do {
            std::vector<std::size_t> s{0, 1, 2};
            do {
                cplx prod = static_cast<double>(sign(r) * sign(s));
                for (std::size_t k = 0; k < 3; ++k) prod *= gm(all[r[k]], all[s[k]]);
                total += prod;
            } while (std::next_permutation(s.begin(), s.end()));
        } while (std::next_permutation(r.begin(), r.end()));
        return rel(total, 6.0 * volume_minor(y, map2, all, all));
    });
    rep.run("ambient_density", "ambient-density", tol["density"], Bound::Upper, [&] {
        Rng rng(opts.seed + 5);
        double worst = 0;
        for (int t = 0; t < kTrials; ++t) {
            const auto d = ambient_volume_density(random_spd(rng, g), map);
            worst = std::max(worst, std::abs(d.metric_det - d.closed_form) / d.closed_form);
        }
        return worst;
    });
    rep.run("modular.postconditions", "modular-action", tol["modular"], Bound::Upper, [&] {
        Rng rng(opts.seed + 6);
        double worst = 0;
        for (int t = 0; t < kTrials; ++t) {
            const auto z = random_siegel_point(g, rng);
            const auto out = modular_transform(z, SymplecticElement::random(g, rng));
            worst = std::max(worst, frobenius_norm(out.tau.Z() - out.tau.Z().transpose()) / frobenius_norm(out.tau.Z()));
            if (!check_positive_definite(out.tau.Y()).positive_definite) return std::numeric_limits<double>::infinity();
        }
        return worst;
    });
    rep.run("metric.invariance", "modular-action", tol["invariance"], Bound::Upper, [&] {
        Rng rng(opts.seed + 7);
        double worst = 0;
        for (int t = 0; t < kTrials; ++t) {
            const auto z = random_siegel_point(g, rng);
            const auto out = modular_transform(z, SymplecticElement::random(g, rng));
            const CMatrix dz = random_symmetric(rng, g);
            const CMatrix ci = inverse(out.ctd);
            const CMatrix dzt = ci.transpose() * dz * ci;
            worst = std::max(worst, rel(metric_form(siegel_metric(z.Y(), map), dz, map),
                                        metric_form(siegel_metric(out.tau.Y(), map), dzt, map)));
        }
        return worst;
    });
    rep.run("induced_metric.hermitian", "siegel-metric", tol["hermitian"], Bound::Upper, [&] {
        Rng rng(opts.seed + 8);
        const std::size_t nrows = g + 1;
        const CMatrix gx = induced_metric_xi(random_matrix(rng, nrows, map.size()), random_spd(rng, g), map);
        if (!check_positive_semidefinite(gx).positive_definite) return std::numeric_limits<double>::infinity();
        return hermiticity_defect(gx);
    });
    return rep;
}

// ---------------------------------------------------------------------------
// Theta / Fay suite

namespace {

void theta_invariants(VerificationReport& rep, const SuiteOptions& opts) {
    const auto& tol = opts.tol;
    rep.run("theta.reference", "theta-series", tol["theta_reference"], Bound::Upper, [&] {
        double oracle = 0;
        for (int n = -30; n <= 30; ++n) oracle += std::exp(-kPi * n * n);
        if (opts.force_fail) oracle *= 1.0 + 1e-9;
        const ThetaFunction th(SiegelPoint(CMatrix{{cplx(0, 1)}}));
        const CVector z{0.0};
        return std::abs(th(z) - oracle);
    });
    double quasi = 0, parity = 0;
    Rng rng(opts.seed + 11);
    for (std::size_t g = 1; g <= 3; ++g)
        for (int t = 0; t < 3; ++t) {
            const SiegelPoint tau = diag_dominant_point(rng, g);
            const ThetaFunction th(tau);
            const CVector z = random_cell_point(rng, tau);
            const cplx base = th(z);
            for (std::size_t k = 0; k < g; ++k) {
                CVector zi = z, zt = z;
                zi[k] += 1.0;
                for (std::size_t i = 0; i < g; ++i) zt[i] += tau.Z()(i, k);
                const cplx factor = std::exp(cplx(0, -kPi) * tau.Z()(k, k) - cplx(0, 2 * kPi) * z[k]);
                quasi = std::max({quasi, rel(th(zi), base), rel(th(zt), factor * base)});
            }
            const auto ch = ThetaCharacteristic::from_index(g, rng.index(std::size_t{1} << (2 * g)));
            CVector mz(g);
            for (std::size_t i = 0; i < g; ++i) mz[i] = -z[i];
            parity = std::max(parity, rel(th(mz, ch), (ch.odd() ? -1.0 : 1.0) * th(z, ch)));
        }
    rep.add(make_check("theta.quasi_periodicity", "theta-series", quasi, tol["theta_quasi"]));
    rep.add(make_check("theta.parity", "theta-series", parity, tol["theta_parity"]));
}

CVector nonvanishing_w(Rng& rng, const ThetaFunction& th) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        CVector w(th.genus());
        for (auto& c : w) c = rng.disk(0.5);
        if (th.evaluate(w).normalized_modulus() >= 1e-3) return w;
    }
    throw Error("theta(w) vanishes for every sampled w");
}

}  // namespace

VerificationReport verify_fay(std::size_t genus, std::size_t m, const CurveSpec& spec, const SuiteOptions& opts) {
    if (m < 2) throw PreconditionError("verify-fay: the trisecant identity needs m >= 2");
    if (genus != 1 && genus != 2) throw PreconditionError("verify-fay: genus must be 1 or 2");
    if (m > 4) throw PreconditionError("verify-fay: m must be at most 4");
    VerificationReport rep;
    rep.command = "verify-fay";
    rep.seed = opts.seed;
    rep.header.emplace_back("genus", std::to_string(genus));
    rep.header.emplace_back("m", std::to_string(m));
    const auto& tol = opts.tol;
    theta_invariants(rep, opts);

    if (genus == 1) {
        constexpr std::size_t kTrials = 100;
        const auto res = parallel_map<double>(kTrials, opts.threads, [&](std::size_t t) {
            Rng rng(opts.seed * 1000003ULL + t);
            const SiegelPoint tau = diag_dominant_point(rng, 1);
            const ThetaFunction th(tau);
            std::vector<CVector> x, y;
            for (std::size_t i = 0; i < m; ++i) {
                x.push_back(random_cell_point(rng, tau));
                y.push_back(random_cell_point(rng, tau));
            }
            const CVector w = random_cell_point(rng, tau);
            return fay_residual(w, x, y, th, ThetaCharacteristic::first_odd(1)).residual;
        });
        rep.add(make_check("fay.g1.m" + std::to_string(m) + "[trials=100]", "trisecant",
                           *std::max_element(res.begin(), res.end()), tol["fay_g1"]));
        rep.run("riemann_constants.g1", "riemann-constants", tol["riemann"], Bound::Upper, [&] {
            Rng rng(opts.seed + 13);
            const SiegelPoint tau = diag_dominant_point(rng, 1);
            const RiemannConstants rc = find_riemann_constants(ThetaFunction(tau), {CVector{0.0}});
            const CVector expect{(1.0 + tau.Z()(0, 0)) / 2.0};
            return lattice_distance(tau, lin(1, rc.h, -1, expect));
        });
        return rep;
    }

    describe_spec(rep, spec);
    const auto* hc = std::get_if<HyperellipticCurve>(spec.model.get());
    if (!hc || hc->genus() != 2) throw PreconditionError("verify-fay genus 2 needs a hyperelliptic genus-2 curve");
    const PeriodData pd = compute_periods(*hc);
    const ThetaFunction th(pd.tau);
    const auto odd = odd_characteristics(2);
    auto image = [&](const CurvePoint& p) { return abel_map(pd, p).value; };

    constexpr std::size_t kTrials = 5;
    struct FayTrial {
        double worst = std::nan(""), spread = std::nan("");
        std::string error;
    };
    const auto trials = parallel_map<FayTrial>(kTrials, opts.threads, [&](std::size_t t) {
        FayTrial ft;
        try {
            const auto pts = sample_points(*spec.model, 2 * m, opts.seed + 17 * (t + 1), SampleMode::Real);
            std::vector<CVector> x, y;
            for (std::size_t i = 0; i < m; ++i) {
                x.push_back(image(pts[i]));
                y.push_back(image(pts[m + i]));
            }
            Rng rng(opts.seed * 7 + t);
            const CVector w = nonvanishing_w(rng, th);
            double lo = 1, hi = 0;
            for (std::size_t k = 0; k < 3; ++k) {
                const double r = fay_residual(w, x, y, th, odd[k]).residual;
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
            ft.worst = hi;
            ft.spread = hi - lo;
        } catch (const std::exception& e) {
            ft.error = e.what();
        }
        return ft;
    });
    double worst = 0, spread = 0;
    std::string error;
    for (const auto& ft : trials) {
        worst = std::isnan(ft.worst) || std::isnan(worst) ? std::nan("") : std::max(worst, ft.worst);
        spread = std::isnan(ft.spread) || std::isnan(spread) ? std::nan("") : std::max(spread, ft.spread);
        if (error.empty()) error = ft.error;
    }
    auto f1 = make_check("fay.g2.m" + std::to_string(m) + "[trials=5]", "trisecant", worst, tol["fay_g2"]);
    auto f2 = make_check("fay.g2.characteristic_independence", "trisecant", spread, tol["characteristic"]);
    f1.note = f2.note = error;
    rep.add(f1);
    rep.add(f2);

    std::vector<CVector> probes;
    for (const auto& p : sample_points(*spec.model, 6, opts.seed + 101, SampleMode::Real)) probes.push_back(image(p));
    RiemannConstants rc;
    bool have_rc = false;
    rep.run("riemann_constants.g2", "riemann-constants", tol["riemann"], Bound::Upper, [&] {
        rc = find_riemann_constants(th, probes);
        have_rc = true;
        rep.notes.push_back("riemann constants h = tau a + b with [a;b] = " + rc.characteristic.str() +
                            ", theta(A(q) - h) = 0, base e_1");
        return rc.best;
    });
    if (have_rc) rep.add(make_check("riemann_constants.g2.separation", "riemann-constants", rc.runner_up, 1e-2, Bound::Lower));

    for (int n : {1, 2}) {
        rep.run("gamma_cross_ratio.n" + std::to_string(n), "gamma-cross-ratio", tol["cross_ratio"], Bound::Upper, [&] {
            if (!have_rc) throw Error("no Riemann constants");
            const std::size_t nn = differential_dimension(2, n);
            for (int attempt = 0; attempt < 10; ++attempt) {
                const auto pts = sample_points(*spec.model, nn + 2, opts.seed + 211 + 7 * attempt + 100 * n,
                                               SampleMode::Real);
                const std::vector<CurvePoint> anchors(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(nn));
                try {
                    double worst_cr = 0;
                    for (std::size_t i = 0; i < nn; ++i)
                        for (std::size_t j = 0; j < nn; ++j) {
                            if (i == j) continue;
                            const auto c = gamma_cross_ratio_check(pd, th, rc, n, anchors, pts[nn], pts[nn + 1], i, j,
                                                                   ThetaCharacteristic::first_odd(2));
                            worst_cr = std::max(worst_cr, c.residual);
                        }
                    return worst_cr;
                } catch (const NonGenericAnchors&) {
                } catch (const Error& e) {
                    if (std::string(e.what()).find("theta(w) vanishes") == std::string::npos) throw;
                }
            }
            throw Error("no admissible anchors after 10 draws");
        });
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Periods

VerificationReport verify_periods(const CurveSpec& spec, const SuiteOptions& opts) {
    const auto* hc = std::get_if<HyperellipticCurve>(spec.model.get());
    if (!hc) throw PreconditionError("periods needs a hyperelliptic curve");
    if (hc->genus() > kMaxPeriodGenus) throw PreconditionError("periods supports genus at most 3");
    VerificationReport rep;
    rep.command = "periods";
    rep.seed = opts.seed;
    describe_spec(rep, spec);
    const auto& tol = opts.tol;
    PeriodData pd = [&] {
        try {
            return compute_periods(*hc);
        } catch (const PreconditionError&) {
            throw;
        } catch (const std::exception& e) {
            rep.add(make_check("tau.symmetry", "period-matrix", std::nan(""), tol["symmetry"]));
            rep.records.back().note = e.what();
            throw;
        }
    }();
    const std::size_t g = pd.genus();
    for (std::size_t i = 0; i < g; ++i) {
        std::string row = "tau[" + std::to_string(i) + "] =";
        for (std::size_t j = 0; j < g; ++j) row += " " + fixed(pd.tau.Z()(i, j));
        rep.notes.push_back(row);
    }
    if (g == 1) rep.notes.push_back("tau reduced to the fundamental domain = " +
                                    fixed(reduce_to_fundamental_domain(pd.tau.Z()(0, 0))));
    rep.notes.push_back(std::string("b-cycles reversed: ") + (pd.b_flipped ? "yes" : "no"));

    rep.add(make_check("tau.symmetry", "period-matrix", pd.symmetry_defect, tol["symmetry"]));
    rep.add(make_check("tau.positivity", "period-matrix", *std::min_element(pd.pivots.begin(), pd.pivots.end()), 1e-12,
                       Bound::Lower));
    double qerr = 0, scale = 0;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            qerr = std::max({qerr, pd.a_error[i][j], pd.b_error[i][j]});
            scale = std::max({scale, std::abs(pd.a_periods(i, j)), std::abs(pd.b_periods(i, j))});
        }
    rep.add(make_check("periods.quadrature", "period-matrix", qerr / scale, tol["quadrature"]));

    const std::size_t nb = hc->branch_points().size();
    rep.run("abel.half_periods", "abel-half-period", tol["half_period"], Bound::Upper, [&] {
        double worst = 0;
        for (std::size_t k = 0; k < nb; ++k) {
            CVector a = abel_branch_point(pd, k).value;
            if (opts.force_fail && k == 1) a[0] += 1e-3;
            worst = std::max(worst, lattice_distance(pd.tau, lin(2, a, 0, a)));
        }
        return worst;
    });
    if (hc->has_real_branch_points()) {
        const auto pts = sample_points(*spec.model, 10, opts.seed + 3, SampleMode::Real);
        rep.run("abel.involution", "abel-half-period", tol["involution"], Bound::Upper, [&] {
            double worst = 0;
            for (const auto& p : pts) {
                const CVector a = abel_map(pd, p).value;
                const CVector b = abel_map(pd, CurvePoint{p.x, -p.y, p.chart}).value;
                worst = std::max(worst, lattice_distance(pd.tau, lin(1, a, 1, b)));
            }
            return worst;
        });
        rep.run("abel.path_independence", "abel-half-period", tol["path"], Bound::Upper, [&] {
            AbelOptions other;
            other.waypoint_height = -1.6;
            double worst = 0;
            for (const auto& p : pts)
                worst = std::max(worst, lattice_distance(pd.tau, lin(1, abel_map(pd, p).value, -1,
                                                                     abel_map(pd, p, other).value)));
            return worst;
        });
    } else {
        rep.add(make_warning("abel.involution", "abel-half-period", "complex branch points: Abel map checks limited to branch points"));
    }
    return rep;
}

// ---------------------------------------------------------------------------

VerificationReport selftest(const SuiteOptions& opts) {
    VerificationReport rep;
    rep.command = "selftest";
    rep.seed = opts.seed;
    const auto quintic = builtin_spec("fermat_quintic");
    const auto hyper = builtin_spec("hyperelliptic_g4");
    const auto genus2 = builtin_spec("genus2");
    rep.merge(verify_petri(quintic, opts), "petri/fermat-quintic/");
    rep.merge(verify_petri(hyper, opts), "petri/hyperelliptic-g4/");
    rep.merge(verify_siegel(2, opts), "siegel/g2/");
    rep.merge(verify_siegel(5, opts), "siegel/g5/");
    rep.merge(verify_fay(1, 2, genus2, opts), "fay/g1-m2/");
    rep.merge(verify_fay(1, 3, genus2, opts), "fay/g1-m3/");
    rep.merge(verify_fay(2, 2, genus2, opts), "fay/g2-m2/");
    for (const char* name : {"lemniscatic", "equianharmonic", "genus2", "genus3"})
        rep.merge(verify_periods(builtin_spec(name), opts), std::string("periods/") + name + "/");

    rep.run("periods/lemniscatic/tau_value", "period-matrix", 1e-8, Bound::Upper, [&] {
        const auto pd = compute_periods(std::get<HyperellipticCurve>(*builtin_spec("lemniscatic").model));
        return std::abs(pd.tau.Z()(0, 0) - cplx(0, 1));
    });
    rep.run("periods/equianharmonic/tau_value", "period-matrix", 1e-8, Bound::Upper, [&] {
        const auto pd = compute_periods(std::get<HyperellipticCurve>(*builtin_spec("equianharmonic").model));
        return std::abs(reduce_to_fundamental_domain(pd.tau.Z()(0, 0)) - cplx(0.5, std::sqrt(3.0) / 2));
    });
    return rep;
}

}  // namespace petrisiegel
