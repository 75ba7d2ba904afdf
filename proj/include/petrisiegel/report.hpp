#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace petrisiegel {

const char* tool_version();

enum class Status { Pass, Fail, Warn };
const char* status_name(Status s);

/// Upper: pass iff residual <= tol. Lower (negative controls): pass iff
/// residual >= tol. NaN residuals always fail.
enum class Bound { Upper, Lower };

struct CheckRecord {
    std::string check;
    std::string anchor;
    double residual = 0.0;
    double tol = 0.0;
    Bound bound = Bound::Upper;
    Status status = Status::Pass;
    std::string note;
    double ms = -1.0;
};

CheckRecord make_check(std::string check, std::string anchor, double residual, double tol,
                       Bound bound = Bound::Upper);
CheckRecord make_warning(std::string check, std::string anchor, std::string note);

/// Named tolerances with defaults; overrides are echoed in reports.
class ToleranceSet {
public:
    ToleranceSet();
    double operator[](const std::string& name) const;
    /// Throws PreconditionError for unknown names or non-positive values.
    void set(const std::string& name, double value);
    /// Parses NAME=VALUE.
    void set(const std::string& assignment);
    const std::map<std::string, double>& overrides() const { return overrides_; }
    const std::map<std::string, double>& values() const { return values_; }

private:
    std::map<std::string, double> values_;
    std::map<std::string, double> overrides_;
};

class VerificationReport {
public:
    std::string command;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> header;  ///< extra key=value lines
    std::map<std::string, double> tolerance_overrides;
    std::vector<CheckRecord> records;
    std::vector<std::string> notes;

    void add(CheckRecord r) { records.push_back(std::move(r)); }
    /// Runs fn, timing it; exceptions become a FAIL record carrying the message.
    void run(const std::string& check, const std::string& anchor, double tol, Bound bound,
             const std::function<double()>& fn);
    /// Appends another report's records and notes with a name prefix.
    void merge(const VerificationReport& other, const std::string& prefix);

    std::size_t failed() const;
    std::size_t warned() const;
    bool pass() const { return failed() == 0; }
    std::string render(bool timings) const;
};

}  // namespace petrisiegel
