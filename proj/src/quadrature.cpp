#include "petrisiegel/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "petrisiegel/errors.hpp"

namespace petrisiegel {

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> x(n), w(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it_newton = 0; it_newton < 100; ++it_newton) {
            double p0 = 1.0, p1 = z;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * z * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

namespace {

struct RuleValue {
    std::complex<double> value;
    double abs_scale;
};

RuleValue apply_rule(const std::function<std::complex<double>(double)>& g, double a, double b,
                     EndpointSingularity flags, std::size_t n) {
    std::complex<double> sum{};
    double scale = 0.0;
    if (flags == EndpointSingularity::Both) {
        // x = m - h cos(theta); the weight cancels against dx.
        const double m = 0.5 * (a + b), h = 0.5 * (b - a);
        const double w = std::numbers::pi / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double theta = (static_cast<double>(k) + 0.5) * w;
            const auto v = g(m - h * std::cos(theta));
            sum += v;
            scale += std::abs(v);
        }
        return {sum * w, scale * w};
    }
    const auto& [nodes, weights] = gauss_legendre(n);
    if (flags == EndpointSingularity::None) {
        const double m = 0.5 * (a + b), h = 0.5 * (b - a);
        for (std::size_t k = 0; k < n; ++k) {
            const auto v = g(m + h * nodes[k]);
            sum += weights[k] * v;
            scale += weights[k] * std::abs(v);
        }
        return {sum * h, scale * h};
    }
    // x = a + t^2 (or b - t^2), t in [0, sqrt(b - a)], dx / sqrt(.) = 2 dt.
    const double tmax = std::sqrt(b - a);
    const double h = 0.5 * tmax;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = h * (nodes[k] + 1.0);
        const double x = flags == EndpointSingularity::Left ? a + t * t : b - t * t;
        const auto v = g(x);
        sum += weights[k] * v;
        scale += weights[k] * std::abs(v);
    }
    return {2.0 * h * sum, 2.0 * h * scale};
}

}  // namespace

QuadResult quad_segment(const std::function<std::complex<double>(double)>& g, double a, double b,
                        EndpointSingularity flags, const QuadOptions& opts) {
    if (!(a < b)) throw PreconditionError("quad_segment: requires a < b");
    std::size_t n = opts.initial_nodes;
    RuleValue prev = apply_rule(g, a, b, flags, n);
    double last_err = std::numeric_limits<double>::infinity();
    while (2 * n <= opts.max_nodes) {
        n *= 2;
        const RuleValue cur = apply_rule(g, a, b, flags, n);
        const double err = std::abs(cur.value - prev.value);
        last_err = err;
        if (err <= opts.rel_tol * std::max(std::abs(cur.value), 1e-3 * cur.abs_scale)) {
            return {cur.value, err, n};
        }
        prev = cur;
    }
    throw TruncationFailure("quad_segment: node cap reached without convergence", last_err);
}

}  // namespace petrisiegel
