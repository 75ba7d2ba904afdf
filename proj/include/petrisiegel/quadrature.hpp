#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace petrisiegel {

enum class EndpointSingularity { None, Left, Right, Both };

struct QuadResult {
    std::complex<double> value;
    double error;       ///< |I_2n - I_n| at the accepted level
    std::size_t nodes;  ///< node count of the accepted rule
};

struct QuadOptions {
    double rel_tol = 1e-10;
    std::size_t initial_nodes = 16;
    std::size_t max_nodes = 8192;
};

/// Integrates over [a, b] with inverse-square-root endpoint weights:
///   None  : int g(x) dx                        (Gauss-Legendre)
///   Left  : int g(x) / sqrt(x - a) dx          (x = a + t^2, Gauss-Legendre)
///   Right : int g(x) / sqrt(b - x) dx          (x = b - t^2, Gauss-Legendre)
///   Both  : int g(x) / sqrt((x - a)(b - x)) dx (Gauss-Chebyshev)
/// The node count doubles until successive rules agree to rel_tol; throws
/// TruncationFailure at the cap.
QuadResult quad_segment(const std::function<std::complex<double>(double)>& g, double a, double b,
                        EndpointSingularity flags, const QuadOptions& opts = {});

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per n.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(std::size_t n);

}  // namespace petrisiegel
