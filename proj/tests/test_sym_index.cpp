#include "doctest.h"
#include "test_helpers.hpp"

#include "petrisiegel/errors.hpp"
#include "petrisiegel/sym_index.hpp"

using namespace petrisiegel;
using namespace testutil;

TEST_CASE("pair index ordering") {
    const auto m2 = build_pair_index(2);
    REQUIRE(m2.size() == 3);
    CHECK(m2.label(0) == "(1,1)");
    CHECK(m2.label(1) == "(2,2)");
    CHECK(m2.label(2) == "(1,2)");
    const auto m4 = build_pair_index(4);
    CHECK(m4.label(7) == "(2,3)");  // 1-based index 8
    CHECK(build_pair_index(1).size() == 1);
    CHECK_THROWS_AS(build_pair_index(0), PreconditionError);

    const auto m3 = build_pair_index(3);
    const char* expected[] = {"(1,1)", "(2,2)", "(3,3)", "(1,2)", "(1,3)", "(2,3)"};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(m3.label(i) == expected[i]);
        CHECK(m3.index(m3.first(i), m3.second(i)) == i);
        CHECK(m3.index(m3.second(i), m3.first(i)) == i);
    }
}

TEST_CASE("petri layout coincides with the pair order") {
    for (std::size_t g = 1; g <= 7; ++g) {
        const auto map = build_pair_index(g);
        const auto perm = petri_layout_to_pair_index(map);
        for (std::size_t i = 0; i < perm.size(); ++i) CHECK(perm[i] == i);
    }
}

TEST_CASE("sym_vec") {
    const auto m2 = build_pair_index(2);
    const CVector a{1.0, 0.0}, b{1.0, 2.0};
    CHECK(sym_vec(a, m2) == CVector{1.0, 0.0, 0.0});
    CHECK(sym_vec(b, m2) == CVector{1.0, 4.0, 2.0});
    const CVector c{0.0, 0.0, 1.0};
    CHECK(sym_vec(c, build_pair_index(3)) == CVector{0.0, 0.0, 1.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(sym_vec(c, m2), PreconditionError);
}

TEST_CASE("sym_square fixed values") {
    const auto m2 = build_pair_index(2);
    CHECK(rel_matrix(sym_square(CMatrix::identity(2), m2), CMatrix::identity(3)) == 0.0);
    const CVector d{2.0, 3.0};
    const CVector dd{4.0, 9.0, 6.0};
    CHECK(rel_matrix(sym_square(CMatrix::diagonal(d), m2), CMatrix::diagonal(dd)) == 0.0);
    CMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
    CMatrix expected{{0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
    CHECK(rel_matrix(sym_square(swap, m2), expected) == 0.0);
}

TEST_CASE("sym_square: rank-one action, functoriality, determinant") {
    Rng rng(21);
    for (std::size_t g = 1; g <= 5; ++g) {
        const auto map = build_pair_index(g);
        const CMatrix a = random_matrix(rng, g, g), b = random_matrix(rng, g, g);
        const CVector u = random_vector(rng, g);
        const CMatrix aa = sym_square(a, map);

        const CVector lhs = aa * std::span<const cplx>(sym_vec(u, map));
        const CVector au = a * std::span<const cplx>(u);
        const CVector rhs = sym_vec(au, map);
        CHECK(rel_matrix(CMatrix::column(lhs), CMatrix::column(rhs)) < 1e-12);

        CHECK(rel_matrix(aa * sym_square(b, map), sym_square(a * b, map)) < 1e-12);
        CHECK(rel(det(aa).value, std::pow(det(a).value, static_cast<double>(g + 1))) < 1e-10);
    }
}

TEST_CASE("resummation identities") {
    const auto m2 = build_pair_index(2);
    CMatrix ones{{1.0, 1.0}, {1.0, 1.0}};
    auto r = resum_check(ones, m2);
    CHECK(r.full_sum == cplx(4.0));
    CHECK(r.pair_sum == cplx(4.0));
    r = resum_check(CMatrix::identity(3), build_pair_index(3));
    CHECK(r.full_sum == cplx(3.0));
    CHECK(r.pair_sum == cplx(3.0));

    Rng rng(22);
    const auto m4 = build_pair_index(4);
    const CMatrix f = random_symmetric(rng, 4);
    r = resum_check(f, m4);
    CHECK(rel(r.full_sum, r.pair_sum) < 1e-14);
    CHECK(rel(r.full_sum, r.multiplicity_sum) < 1e-14);
    const CMatrix nonsym = random_matrix(rng, 4, 4);
    r = resum_check(nonsym, m4);
    CHECK(rel(r.full_sum, r.pair_sum) < 1e-14);
}
