#include "petrisiegel/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "petrisiegel/errors.hpp"

#ifndef PETRISIEGEL_VERSION
#define PETRISIEGEL_VERSION "0.0.0"
#endif

namespace petrisiegel {

const char* tool_version() { return PETRISIEGEL_VERSION; }

const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Warn: return "WARN";
    }
    return "?";
}

CheckRecord make_check(std::string check, std::string anchor, double residual, double tol, Bound bound) {
    CheckRecord r{std::move(check), std::move(anchor), residual, tol, bound, Status::Fail, {}, -1.0};
    const bool ok = bound == Bound::Upper ? residual <= tol : residual >= tol;
    r.status = ok && !std::isnan(residual) ? Status::Pass : Status::Fail;
    return r;
}

CheckRecord make_warning(std::string check, std::string anchor, std::string note) {
    CheckRecord r{std::move(check), std::move(anchor), std::nan(""), 0.0, Bound::Upper, Status::Warn,
                  std::move(note), -1.0};
    return r;
}

ToleranceSet::ToleranceSet()
    : values_{
          {"determinant", 1e-8},    {"control", 1e-6},          {"block", 1e-8},
          {"annihilation", 1e-8},   {"q_independence", 1e-6},   {"r_independence", 1e-6},
          {"expansion", 1e-9},      {"node_independence", 1e-8}, {"metric_trace", 1e-12},
          {"functoriality", 1e-10}, {"sym_det", 1e-10},         {"bergman", 1e-12},
          {"permutation", 1e-12},   {"density", 1e-10},         {"modular", 1e-10},
          {"invariance", 1e-10},    {"hermitian", 1e-12},       {"theta_reference", 1e-12},
          {"theta_quasi", 1e-10},   {"theta_parity", 1e-12},    {"fay_g1", 1e-10},
          {"fay_g2", 1e-6},         {"characteristic", 1e-6},   {"cross_ratio", 1e-6},
          {"riemann", 1e-6},        {"symmetry", 1e-8},         {"half_period", 1e-6},
          {"quadrature", 1e-9},     {"path", 1e-6},             {"involution", 1e-6},
      } {}

double ToleranceSet::operator[](const std::string& name) const {
    const auto it = values_.find(name);
    if (it == values_.end()) throw PreconditionError("unknown tolerance '" + name + "'");
    return it->second;
}

void ToleranceSet::set(const std::string& name, double value) {
    if (!values_.count(name)) throw PreconditionError("unknown tolerance '" + name + "'");
    if (!(value > 0) || !std::isfinite(value)) throw PreconditionError("tolerance '" + name + "' must be positive");
    values_[name] = value;
    overrides_[name] = value;
}

void ToleranceSet::set(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw PreconditionError("--tol expects NAME=VALUE, got '" + assignment + "'");
    const std::string name = assignment.substr(0, eq), text = assignment.substr(eq + 1);
    double value = 0;
    try {
        std::size_t used = 0;
        value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw PreconditionError("--tol value for '" + name + "' is not a number: '" + text + "'");
    }
    set(name, value);
}

void VerificationReport::run(const std::string& check, const std::string& anchor, double tol, Bound bound,
                             const std::function<double()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckRecord r;
    try {
        r = make_check(check, anchor, fn(), tol, bound);
    } catch (const std::exception& e) {
        r = make_check(check, anchor, std::nan(""), tol, bound);
        r.note = e.what();
    }
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    add(std::move(r));
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
    for (auto r : other.records) {
        r.check = prefix + r.check;
        records.push_back(std::move(r));
    }
    for (const auto& [k, v] : other.header) notes.push_back(prefix + k + "=" + v);
    for (const auto& n : other.notes) notes.push_back(prefix + n);
}

std::size_t VerificationReport::failed() const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.status == Status::Fail;
    return n;
}

std::size_t VerificationReport::warned() const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.status == Status::Warn;
    return n;
}

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string quoted(const std::string& s) {
    if (s.find_first_of(" \t\"=") == std::string::npos && !s.empty()) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

}  // namespace

std::string VerificationReport::render(bool timings) const {
    std::ostringstream os;
    os << "tool=petrisiegel version=" << tool_version() << "\n";
    os << "command=" << command << " seed=" << seed << "\n";
    for (const auto& [k, v] : header) os << k << "=" << quoted(v) << "\n";
    for (const auto& [k, v] : tolerance_overrides) os << "tol_override " << k << "=" << num(v) << "\n";
    for (const auto& r : records) {
        os << "check=" << quoted(r.check) << " anchor=" << quoted(r.anchor) << " residual=" << num(r.residual)
           << " tol=" << (r.status == Status::Warn ? std::string("-") : num(r.tol))
           << (r.bound == Bound::Lower ? " bound=lower" : "") << " status=" << status_name(r.status)
           << " ms=" << (timings && r.ms >= 0 ? num(r.ms) : std::string("off"));
        if (!r.note.empty()) os << " note=" << quoted(r.note);
        os << "\n";
    }
    for (const auto& n : notes) os << "note " << n << "\n";
    os << "overall=" << (pass() ? "PASS" : "FAIL") << " checks=" << records.size() << " failed=" << failed()
       << " warned=" << warned() << "\n";
    return os.str();
}

}  // namespace petrisiegel
