#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>

#include "petrisiegel/jacobian.hpp"
#include "petrisiegel/parallel.hpp"
#include "petrisiegel/suites.hpp"

using namespace petrisiegel;

namespace {

int failures = 0;

void verdict(int id, const std::string& what, bool ok, const std::string& detail) {
    std::printf("criterion %d %s: %s (%s)\n", id, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Selection {
    std::size_t count = 0, failed = 0;
    double worst = 0;
    double least = INFINITY;
};

Selection select(const VerificationReport& rep, const std::string& needle) {
    Selection s;
    for (const auto& r : rep.records) {
        if (r.check.find(needle) == std::string::npos) continue;
        ++s.count;
        if (r.status != Status::Pass) ++s.failed;
        else if (r.bound == Bound::Upper) s.worst = std::max(s.worst, r.residual);
        else s.least = std::min(s.least, r.residual);
    }
    return s;
}

bool all_pass(const Selection& s, std::size_t expected) { return s.count == expected && s.failed == 0; }

std::string describe(const Selection& s) {
    char buf[128];
    if (std::isinf(s.least))
        std::snprintf(buf, sizeof buf, "%zu checks, %zu failed, worst %.3e", s.count, s.failed, s.worst);
    else
        std::snprintf(buf, sizeof buf, "%zu checks, %zu failed, smallest %.3e", s.count, s.failed, s.least);
    return buf;
}

bool has_note(const VerificationReport& rep, const std::string& note) {
    for (const auto& n : rep.notes)
        if (n == note) return true;
    return false;
}

template <class Fn>
void guarded(int id, const std::string& what, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        verdict(id, what, false, std::string("exception: ") + e.what());
    }
}

}  // namespace

int main() {
    SuiteOptions opts;
    opts.threads = default_threads();
    const auto quintic = builtin_spec("fermat_quintic");
    const auto hyper = builtin_spec("hyperelliptic_g4");
    const auto genus2 = builtin_spec("genus2");

    VerificationReport petri, petri_h;
    double petri_s = 0;
    guarded(1, "determinantal vanishing on the plane quintic", [&] {
        petri_s = seconds([&] { petri = verify_petri(quintic, opts); });
        petri_h = verify_petri(hyper, opts);
        const auto det = select(petri, "determinant[");
        const auto ctl = select(petri, "determinant.control[");
        verdict(1, "determinantal vanishing on the plane quintic",
                all_pass(det, 5) && all_pass(ctl, 5) && petri_s < 10,
                describe(det) + "; controls " + describe(ctl) + "; " + std::to_string(petri_s) + " s");
    });
    guarded(2, "relation coefficients", [&] {
        const auto ann = select(petri, ".annihilation");
        const auto qi = select(petri, ".q_independence");
        const auto rank = select(petri, "relations.rank");
        verdict(2, "relation coefficients",
                all_pass(ann, 6) && all_pass(qi, 6) && all_pass(rank, 1) && has_note(petri, "relations=6 rank=6") &&
                    petri_s < 10,
                "annihilation " + describe(ann) + "; q-independence " + describe(qi));
    });
    guarded(3, "Petri basis dichotomy", [&] {
        const auto plane = select(petri, "petri.rank_certificate");
        const auto hyp = select(petri_h, "petri.rank_certificate");
        verdict(3, "Petri basis dichotomy",
                all_pass(plane, 1) && all_pass(hyp, 1) && has_note(petri, "rank certificate expected 15 (3g-3, non-hyperelliptic)") &&
                    has_note(petri_h, "rank certificate expected 7 (2g-1, hyperelliptic)"),
                "plane 3g-3=15, hyperelliptic 2g-1=7");
    });
    guarded(4, "quadratic expansion coefficients", [&] {
        const auto res = select(petri, "expansion.residual");
        const auto nodes = select(petri, "expansion.node_independence");
        verdict(4, "quadratic expansion coefficients", all_pass(res, 1) && all_pass(nodes, 1),
                "residual " + describe(res) + "; node independence " + describe(nodes));
    });
    guarded(5, "symmetric-square and Siegel identities", [&] {
        Selection total;
        bool ok = true;
        const double s = seconds([&] {
            for (std::size_t g = 2; g <= 5; ++g) {
                const auto rep = verify_siegel(g, opts);
                const auto sel = select(rep, "");
                ok = ok && all_pass(sel, 9);
                total.count += sel.count;
                total.failed += sel.failed;
                total.worst = std::max(total.worst, sel.worst);
            }
        });
        verdict(5, "symmetric-square and Siegel identities", ok && s < 5,
                "g=2..5, " + describe(total) + "; " + std::to_string(s) + " s");
    });

    VerificationReport fay1m2, fay1m3, fay2;
    double fay_s = 0;
    guarded(6, "theta engine", [&] {
        fay_s = seconds([&] {
            fay1m2 = verify_fay(1, 2, genus2, opts);
            fay1m3 = verify_fay(1, 3, genus2, opts);
            fay2 = verify_fay(2, 2, genus2, opts);
        });
        const auto sel = select(fay1m2, "theta.");
        verdict(6, "theta engine", all_pass(sel, 3), describe(sel));
    });
    guarded(7, "period matrices", [&] {
        const auto lem = compute_periods(std::get<HyperellipticCurve>(*builtin_spec("lemniscatic").model));
        const auto eq = compute_periods(std::get<HyperellipticCurve>(*builtin_spec("equianharmonic").model));
        const double lem_err = std::abs(lem.tau.Z()(0, 0) - cplx(0, 1));
        const double eq_err =
            std::abs(reduce_to_fundamental_domain(eq.tau.Z()(0, 0)) - cplx(0.5, std::sqrt(3.0) / 2));
        const auto rep = verify_periods(genus2, opts);
        const auto sym = select(rep, "tau.symmetry");
        const auto pos = select(rep, "tau.positivity");
        const auto half = select(rep, "abel.half_periods");
        char buf[160];
        std::snprintf(buf, sizeof buf, "lemniscatic %.3e, equianharmonic %.3e, symmetry %.3e, half periods %.3e",
                      lem_err, eq_err, sym.worst, half.worst);
        verdict(7, "period matrices",
                lem_err <= 1e-8 && eq_err <= 1e-8 && all_pass(sym, 1) && sym.worst <= 1e-8 && all_pass(pos, 1) &&
                    all_pass(half, 1),
                buf);
    });
    guarded(8, "trisecant identity", [&] {
        const auto a = select(fay1m2, "fay.g1.m2");
        const auto b = select(fay1m3, "fay.g1.m3");
        const auto c = select(fay2, "fay.g2.m2");
        const auto d = select(fay2, "characteristic_independence");
        verdict(8, "trisecant identity",
                all_pass(a, 1) && all_pass(b, 1) && all_pass(c, 1) && all_pass(d, 1) && fay_s < 60,
                "g=1 m=2 " + describe(a) + "; g=1 m=3 " + describe(b) + "; g=2 " + describe(c) + "; " +
                    std::to_string(fay_s) + " s");
    });
    guarded(9, "gamma cross-ratio", [&] {
        const auto n1 = select(fay2, "gamma_cross_ratio.n1");
        const auto n2 = select(fay2, "gamma_cross_ratio.n2");
        verdict(9, "gamma cross-ratio", all_pass(n1, 1) && all_pass(n2, 1),
                "n=1 " + describe(n1) + "; n=2 " + describe(n2));
    });
    guarded(10, "deterministic selftest", [&] {
        std::string first, second;
        bool pass = false;
        const double s = seconds([&] {
            const auto rep = selftest(opts);
            pass = rep.pass();
            first = rep.render(false);
            SuiteOptions serial = opts;
            serial.threads = 1;
            second = selftest(serial).render(false);
        });
        verdict(10, "deterministic selftest", pass && first == second && s < 180,
                std::string(first == second ? "byte-identical" : "reports differ") + " across thread counts; " +
                    std::to_string(s) + " s for two runs");
    });
    return failures == 0 ? 0 : 1;
}
