#include "doctest.h"

#include <cmath>
#include <numbers>

#include "petrisiegel/errors.hpp"
#include "petrisiegel/quadrature.hpp"

using namespace petrisiegel;

TEST_CASE("arcsine integral") {
    const auto r = quad_segment([](double) { return std::complex<double>(1.0); }, 0.0, 1.0, EndpointSingularity::Both);
    CHECK(std::abs(r.value - std::numbers::pi) < 1e-12);
}

TEST_CASE("single flagged endpoint") {
    // int_0^1 x / sqrt(1 - x^2) dx = int_0^1 [x / sqrt(1 + x)] / sqrt(1 - x) dx
    const auto r = quad_segment([](double x) { return std::complex<double>(x / std::sqrt(1 + x)); }, 0.0, 1.0,
                                EndpointSingularity::Right);
    CHECK(std::abs(r.value - 1.0) < 1e-12);
    const auto l = quad_segment([](double x) { return std::complex<double>(1.0 / std::sqrt(1 - x)); }, -1.0, 0.0,
                                EndpointSingularity::Left);
    // int_{-1}^0 dx / sqrt(1 - x^2) = pi / 2
    CHECK(std::abs(l.value - std::numbers::pi / 2) < 1e-12);
}

TEST_CASE("plain Gauss-Legendre") {
    const auto r = quad_segment([](double x) { return std::complex<double>(std::exp(x)); }, 0.0, 2.0,
                                EndpointSingularity::None);
    CHECK(std::abs(r.value - (std::exp(2.0) - 1)) < 1e-12);
    const auto& [x, w] = gauss_legendre(5);
    double s = 0;
    for (std::size_t k = 0; k < 5; ++k) s += w[k] * std::pow(x[k], 8);
    CHECK(s == doctest::Approx(2.0 / 9).epsilon(1e-14));
}

TEST_CASE("genus-two segment is self-certifying") {
    // x^1 / sqrt|(x+2)(x-1)(x-2)| over [-1, 0] with both ends singular
    const auto r = quad_segment(
        [](double x) { return std::complex<double>(x / std::sqrt(std::abs((x + 2) * (x - 1) * (x - 2)))); }, -1.0, 0.0,
        EndpointSingularity::Both);
    CHECK(r.error <= 1e-10 * std::abs(r.value));
}

TEST_CASE("node cap raises truncation failure") {
    QuadOptions opts;
    opts.max_nodes = 64;
    CHECK_THROWS_AS(quad_segment([](double x) { return std::complex<double>(std::sqrt(x)); }, 0.0, 1.0,
                                 EndpointSingularity::None, opts),
                    TruncationFailure);
}
