#include "doctest.h"
#include "test_helpers.hpp"

#include "petrisiegel/errors.hpp"

using namespace petrisiegel;
using namespace testutil;

TEST_CASE("det of small fixed matrices") {
    CHECK(std::abs(det(CMatrix::identity(3)).value - 1.0) < 1e-15);
    CMatrix rep{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}, {1.0, 2.0, 3.0}};
    const Determinant d = det(rep);
    CHECK(std::abs(d.value) <= 1e-14 * d.hadamard);
}

TEST_CASE("det matches cofactor expansion") {
    Rng rng(11);
    for (std::size_t n = 1; n <= 6; ++n) {
        const CMatrix m = random_matrix(rng, n, n);
        CHECK(rel(det(m).value, cofactor_det(m)) < 1e-11);
    }
}

TEST_CASE("det is multiplicative") {
    Rng rng(12);
    for (std::size_t n = 1; n <= 10; ++n) {
        const CMatrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
        CHECK(rel(det(a * b).value, det(a).value * det(b).value) < 1e-11);
    }
}

TEST_CASE("signed minor conventions") {
    const cplx a = 2.0, b = 3.0, c = 5.0, d = 7.0;
    CMatrix m{{a, b}, {c, d}};
    CHECK(signed_minor(m, 0, 0) == d);
    CHECK(signed_minor(m, 0, 1) == -c);
    CHECK_THROWS_AS(signed_minor(m, 2, 0), PreconditionError);
}

TEST_CASE("Laplace expansion along any row") {
    Rng rng(13);
    const CMatrix m = random_matrix(rng, 4, 4);
    const cplx ref = det(m).value;
    for (std::size_t p = 0; p < 4; ++p) {
        cplx s{};
        for (std::size_t q = 0; q < 4; ++q) s += m(p, q) * signed_minor(m, p, q);
        CHECK(rel(s, ref) < 1e-12);
    }
}

TEST_CASE("solve") {
    CMatrix b{{1.0, 2.0}, {3.0, 4.0}};
    CHECK(rel_matrix(solve(CMatrix::identity(2), b), b) < 1e-15);
    CMatrix a{{2.0, 0.0}, {0.0, 4.0}};
    CMatrix rhs{{2.0}, {4.0}};
    const CMatrix x = solve(a, rhs);
    CHECK(std::abs(x(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(x(1, 0) - 1.0) < 1e-15);

    Rng rng(14);
    CMatrix big = random_matrix(rng, 9, 9);
    for (std::size_t i = 0; i < 9; ++i) big(i, i) += 6.0;
    const CMatrix r = random_matrix(rng, 9, 2);
    const CMatrix sol = solve(big, r);
    CHECK(frobenius_norm(big * sol - r) < 1e-11 * frobenius_norm(big) * frobenius_norm(sol));
}

TEST_CASE("singular solve reports a degenerate configuration") {
    CMatrix s{{1.0, 2.0}, {2.0, 4.0}};
    CHECK_THROWS_AS(solve(s, CMatrix::identity(2)), DegenerateConfiguration);
}

TEST_CASE("condition estimate within a factor 10 of the true value") {
    Rng rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 6;
        CMatrix m = random_matrix(rng, n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const double s = std::pow(10.0, rng.uniform(-3.0, 3.0));
            for (std::size_t j = 0; j < n; ++j) m(i, j) *= s;
        }
        const double truth = norm1(m) * norm1(inverse(m));
        const double est = condition_estimate(m);
        CHECK(est <= truth * (1.0 + 1e-10));
        CHECK(est >= truth / 10.0);
    }
}

TEST_CASE("numerical rank and definiteness") {
    Rng rng(16);
    const CMatrix u = random_matrix(rng, 6, 3), v = random_matrix(rng, 3, 6);
    CHECK(numerical_rank(u * v, 1e-8) == 3);
    CHECK(numerical_rank(random_matrix(rng, 5, 5), 1e-8) == 5);
    CHECK(check_positive_definite(random_spd(rng, 4)).positive_definite);
    CMatrix indefinite{{1.0, 0.0}, {0.0, -1.0}};
    CHECK_FALSE(check_positive_definite(indefinite).positive_definite);
    CHECK(check_positive_semidefinite(u * u.adjoint()).positive_definite);
}

TEST_CASE("Laplace ratio") {
    Rng rng(17);
    CMatrix m = random_matrix(rng, 5, 5);
    const double base = laplace_ratio(m);
    CHECK(base >= det(m).ratio());
    CHECK(base <= 1.0);
    CMatrix scaled = m;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) scaled(i, j) *= std::pow(10.0, static_cast<double>(i) - 2.0 * static_cast<double>(j));
    CHECK(std::abs(laplace_ratio(scaled) - base) < 1e-10);
    const CMatrix u = random_matrix(rng, 5, 4), v = random_matrix(rng, 4, 5);
    CHECK(laplace_ratio(u * v) < 1e-13);
    CHECK(laplace_ratio(CMatrix::identity(4)) == 1.0);
}
