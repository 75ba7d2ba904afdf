#pragma once

#include <stdexcept>
#include <string>

namespace petrisiegel {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape, range or parameter violations detected before any numerics run.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A pivot fell below the singularity threshold. Upstream this almost always
/// means the chosen points are not in general position.
class DegenerateConfiguration : public Error {
public:
    DegenerateConfiguration(const std::string& what, double pivot)
        : Error(what + " (pivot magnitude " + std::to_string(pivot) + ")"), pivot_(pivot) {}
    double pivot() const { return pivot_; }

private:
    double pivot_;
};

/// Anchor matrix too ill-conditioned to define a distinguished basis.
class NonGenericAnchors : public Error {
public:
    NonGenericAnchors(const std::string& what, double condition)
        : Error(what + " (condition estimate " + std::to_string(condition) + ")"),
          condition_(condition) {}
    double condition() const { return condition_; }

private:
    double condition_;
};

/// The chart denominator (F_y, F_x or y) vanished at an evaluation point.
class ChartBreakdown : public Error {
public:
    using Error::Error;
};

/// Point does not satisfy the curve equation to tolerance.
class OffCurve : public Error {
public:
    using Error::Error;
};

/// Point sampling exhausted its retry budget.
class SamplingFailure : public Error {
public:
    using Error::Error;
};

/// Lattice sum or quadrature could not reach the requested accuracy.
class TruncationFailure : public Error {
public:
    TruncationFailure(const std::string& what, double achieved)
        : Error(what + " (achieved " + std::to_string(achieved) + ")"), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

/// Malformed curve specification file.
class SpecParseError : public Error {
public:
    SpecParseError(const std::string& what, int line, std::string field)
        : Error("line " + std::to_string(line) + ", field '" + field + "': " + what),
          line_(line), field_(std::move(field)) {}
    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

}  // namespace petrisiegel
