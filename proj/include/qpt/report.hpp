#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qpt {

struct InstanceRecord {
    std::string label;
    double margin = 0.0;
    std::string note;
};

/// Outcome of one verification run. `worst_margin` is the smallest signed slack seen
/// over all instances; the check passes iff worst_margin >= -tolerance.
struct CheckReport {
    std::string check_id;
    std::size_t instances = 0;
    double worst_margin = 0.0;
    double tolerance = 0.0;
    bool passed = true;
    bool vacuous = true;  ///< no instances were evaluated
    std::vector<InstanceRecord> details;
    std::map<std::string, double> metrics;
    std::vector<std::string> notes;

    explicit CheckReport(std::string id = {}, double tol = 0.0) : check_id(std::move(id)), tolerance(tol) {}

    /// Adds one instance and updates worst_margin / passed.
    void record(std::string label, double margin, std::string note = {});
    /// Folds another report's instances into this one.
    void absorb(const CheckReport& other, const std::string& prefix);
    /// Marks the report failed regardless of margins (e.g. a non-finite value).
    void fail(std::string reason);

private:
    bool forced_failure_ = false;
};

/// Text record:
///   [check <id>]
///   key = value lines (instances, worst_margin, tolerance, passed, vacuous, metric.*, note)
///   instance = <label> | <margin> | <note>
///   [end]
std::string serialize(const CheckReport& report);
std::vector<CheckReport> parse_reports(std::string_view text);

}  // namespace qpt
