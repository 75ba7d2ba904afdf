#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace petrisiegel {

/// Seeded 64-bit generator. All randomness in the library flows through this
/// type so that a single seed pins every report.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    std::complex<double> complex_normal() { return {normal(), normal()}; }

    /// Uniform on the closed disk of the given radius.
    std::complex<double> disk(double radius) {
        const double r = radius * std::sqrt(uniform(0.0, 1.0));
        const double t = uniform(0.0, 2.0 * std::numbers::pi);
        return std::polar(r, t);
    }

    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    bool coin() { return index(2) == 1; }

    /// Child generator with an independent stream, for reproducible sub-tasks.
    Rng split() { return Rng(engine_() ^ 0x9e3779b97f4a7c15ULL); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace petrisiegel
