#pragma once

#include <cstdint>

#include "petrisiegel/curve_spec.hpp"
#include "petrisiegel/report.hpp"

namespace petrisiegel {

struct SuiteOptions {
    std::uint64_t seed = 1;
    unsigned threads = 1;
    ToleranceSet tol;
    bool force_fail = false;  ///< perturb one identity so the suite must fail
};

CurveSpec builtin_spec(const std::string& name);

/// Determinantal vanishing, relation coefficients, relation rank, Petri
/// rank certificate and expansion checks on one curve.
VerificationReport verify_petri(const CurveSpec& spec, const SuiteOptions& opts);

/// Symmetric-square and Siegel-space identities on random points of genus g.
VerificationReport verify_siegel(std::size_t g, const SuiteOptions& opts);

/// Theta invariants, Fay residuals, Riemann constants and (genus 2) the gamma
/// cross-ratio. `spec` supplies the genus-2 curve.
VerificationReport verify_fay(std::size_t genus, std::size_t m, const CurveSpec& spec, const SuiteOptions& opts);

/// Period matrix with its certificates; tau is listed in the notes.
VerificationReport verify_periods(const CurveSpec& spec, const SuiteOptions& opts);

/// Every suite on the bundled curves.
VerificationReport selftest(const SuiteOptions& opts);

}  // namespace petrisiegel
