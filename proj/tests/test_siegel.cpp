#include "doctest.h"
#include "test_helpers.hpp"

#include <algorithm>

#include "petrisiegel/errors.hpp"
#include "petrisiegel/siegel.hpp"

using namespace petrisiegel;
using namespace testutil;

namespace {

CMatrix random_dz(Rng& rng, std::size_t g) { return random_symmetric(rng, g); }

int perm_sign(const std::vector<std::size_t>& p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

}  // namespace

TEST_CASE("Siegel point validation") {
    CMatrix z{{cplx(0, 1), 0.0}, {0.0, cplx(0, 1)}};
    CHECK_NOTHROW(SiegelPoint{z});
    CMatrix bad{{cplx(0, 1), 1.0}, {0.0, cplx(0, 1)}};
    CHECK_THROWS_AS(SiegelPoint{bad}, PreconditionError);
    CMatrix neg{{cplx(0, 1), 0.0}, {0.0, cplx(0, -1)}};
    CHECK_THROWS_AS(SiegelPoint{neg}, PreconditionError);
    Rng rng(1);
    const auto p = random_siegel_point(3, rng);
    const CMatrix t = p.cholesky();
    CHECK(rel_matrix(t.transpose() * t, p.Y()) < 1e-14);
}

TEST_CASE("symplectic elements") {
    CHECK(SymplecticElement::identity(3).is_symplectic());
    CHECK(SymplecticElement::inversion(2).is_symplectic());
    CHECK_THROWS_AS(SymplecticElement(1, {1, 1, 1, 1}), PreconditionError);
    Rng rng(2);
    for (int i = 0; i < 10; ++i) CHECK(SymplecticElement::random(3, rng).is_symplectic());
}

TEST_CASE("modular transform") {
    Rng rng(3);
    const auto tau = random_siegel_point(2, rng);
    CHECK(rel_matrix(modular_transform(tau, SymplecticElement::identity(2)).tau.Z(), tau.Z()) < 1e-15);

    const SiegelPoint i1(CMatrix{{cplx(0, 1)}});
    const auto r = modular_transform(i1, SymplecticElement(1, {0, -1, 1, 0}));
    CHECK(std::abs(r.tau.Z()(0, 0) - cplx(0, 1)) < 1e-15);

    for (std::size_t g = 1; g <= 3; ++g)
        for (int trial = 0; trial < 10; ++trial) {
            const auto t = random_siegel_point(g, rng);
            const auto m = SymplecticElement::random(g, rng);
            const auto out = modular_transform(t, m);
            CHECK(frobenius_norm(out.tau.Z() - out.tau.Z().transpose()) <= 1e-10 * frobenius_norm(out.tau.Z()));
            CHECK(check_positive_definite(out.tau.Y()).positive_definite);
        }
}

TEST_CASE("Siegel metric") {
    const auto m1 = build_pair_index(1);
    CMatrix y1{{3.0}};
    CHECK(std::abs(siegel_metric(y1, m1)(0, 0) - 1.0 / 9.0) < 1e-16);
    const auto m2 = build_pair_index(2);
    const CVector d{1.0, 1.0, 2.0};
    CHECK(rel_matrix(siegel_metric(CMatrix::identity(2), m2), CMatrix::diagonal(d)) < 1e-15);
    CMatrix notpd{{1.0, 2.0}, {2.0, 1.0}};
    CHECK_THROWS_AS(siegel_metric(notpd, m2), PreconditionError);

    Rng rng(4);
    for (std::size_t g = 1; g <= 5; ++g) {
        const auto map = build_pair_index(g);
        const auto z = random_siegel_point(g, rng);
        const CMatrix gm = siegel_metric(z.Y(), map);
        CHECK(max_abs(gm - gm.transpose()) == 0.0);
        const CMatrix dz = random_dz(rng, g);
        CHECK(rel(metric_form(gm, dz, map), trace_form(z.Y(), dz)) < 1e-12);
    }
}

TEST_CASE("metric invariance under the symplectic action") {
    Rng rng(5);
    for (std::size_t g = 1; g <= 3; ++g) {
        const auto map = build_pair_index(g);
        for (int trial = 0; trial < 5; ++trial) {
            const auto tau = random_siegel_point(g, rng);
            const auto m = SymplecticElement::random(g, rng);
            const auto out = modular_transform(tau, m);
            const CMatrix dz = random_dz(rng, g);
            const CMatrix ci = inverse(out.ctd);
            const CMatrix dzt = ci.transpose() * dz * ci;
            const cplx before = metric_form(siegel_metric(tau.Y(), map), dz, map);
            const cplx after = metric_form(siegel_metric(out.tau.Y(), map), dzt, map);
            CHECK(rel(before, after) < 1e-10);
        }
    }
}

TEST_CASE("volume minors") {
    Rng rng(6);
    const auto map = build_pair_index(2);
    const CMatrix y = random_spd(rng, 2);
    const std::vector<std::size_t> all{0, 1, 2};
    const double dy = det(y).value.real();
    CHECK(rel(volume_minor(y, map, all, all), 2.0 / (dy * dy * dy)) < 1e-12);
    CHECK(rel(volume_minor(y, map, all, all), det(siegel_metric(y, map)).value) < 1e-12);

    const auto map3 = build_pair_index(3);
    for (std::size_t i = 0; i < map3.size(); ++i) {
        const std::size_t idx[] = {i};
        CHECK(std::abs(volume_minor(CMatrix::identity(3), map3, idx, idx) - map3.multiplicity(i)) < 1e-15);
    }
    const std::vector<std::size_t> rows{0, 3, 5}, swapped{3, 0, 5}, cols{1, 2, 4};
    const CMatrix t3 = random_spd(rng, 3);
    CHECK(rel(volume_minor(t3, map3, rows, cols), -volume_minor(t3, map3, swapped, cols)) < 1e-13);
    const std::vector<std::size_t> dup{0, 0, 1};
    CHECK_THROWS_AS(volume_minor(t3, map3, dup, cols), PreconditionError);

    // permutation oracle: sum_{r,s} sgn(r) sgn(s) prod_k g_{i_r(k) j_s(k)} = N! det(g[I,J])
    const CMatrix gm = siegel_metric(y, map);
    std::vector<std::size_t> r{0, 1, 2};
    cplx total{};
    do {
        std::vector<std::size_t> s{0, 1, 2};
        do {
            cplx prod = static_cast<double>(perm_sign(r) * perm_sign(s));
            for (std::size_t k = 0; k < 3; ++k) prod *= gm(all[r[k]], all[s[k]]);
            total += prod;
        } while (std::next_permutation(s.begin(), s.end()));
    } while (std::next_permutation(r.begin(), r.end()));
    CHECK(rel(total, 6.0 * volume_minor(y, map, all, all)) < 1e-12);
}

TEST_CASE("Bergman kernel identities") {
    CMatrix t1{{2.5}};
    const CVector one{1.0};
    CHECK(std::abs(bergman_kernel(one, one, t1) - 0.4) < 1e-16);
    Rng rng(7);
    for (std::size_t g = 1; g <= 5; ++g) {
        const auto map = build_pair_index(g);
        const CMatrix t = random_spd(rng, g);
        const CVector u = random_vector(rng, g), v = random_vector(rng, g);
        const cplx b = bergman_kernel(u, v, t);
        CHECK(rel(bergman_square_sum(u, v, t, map), b * b) < 1e-12);
    }
}

TEST_CASE("induced metric on synthetic data") {
    Rng rng(8);
    const auto map = build_pair_index(3);
    const CMatrix w = random_matrix(rng, 4, 6);
    const CMatrix t = random_spd(rng, 3);
    const CMatrix gx = induced_metric_xi(w, t, map);
    CHECK(hermiticity_defect(gx) <= 1e-12);
    CHECK(check_positive_semidefinite(gx).positive_definite);
}

TEST_CASE("ambient density") {
    const auto m1 = build_pair_index(1);
    CMatrix y1{{0.5}};
    auto d = ambient_volume_density(y1, m1);
    CHECK(std::abs(d.metric_det - 4.0) < 1e-14);
    CHECK(std::abs(d.closed_form - 4.0) < 1e-14);
    d = ambient_volume_density(CMatrix::identity(2), build_pair_index(2));
    CHECK(std::abs(d.metric_det - 2.0) < 1e-14);
    CHECK(std::abs(d.closed_form - 2.0) < 1e-14);
    Rng rng(9);
    for (std::size_t g = 1; g <= 5; ++g) {
        const auto dd = ambient_volume_density(random_spd(rng, g), build_pair_index(g));
        CHECK(std::abs(dd.metric_det - dd.closed_form) <= 1e-10 * dd.closed_form);
    }
}
