// report.hpp
//
// RunReport: what a CLI command checked, serialized as JSON.

#ifndef MAHLER_REPORT_HPP
#define MAHLER_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace mahler::cli {

using json = nlohmann::json;

// eq:   pass iff abs_diff <= tol
// gt:   negative control, pass iff abs_diff > tol
// info: reported only, never fails the run
enum class CheckKind { eq, gt, info };

struct CheckResult {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_diff = 0.0;
    double tol = 0.0;
    bool pass = false;
    CheckKind kind = CheckKind::eq;
    std::string note;

    bool operator==(const CheckResult&) const = default;
};

CheckResult check_eq(std::string name, double lhs, double rhs, double tol, std::string note = {});
CheckResult check_gt(std::string name, double lhs, double rhs, double threshold, std::string note = {});
CheckResult info(std::string name, double lhs, double rhs, std::string note = {});
// A row whose computation threw; counts as a failure.
CheckResult failed_row(std::string name, const std::string& why);

struct RunReport {
    std::string command;
    json inputs = json::object();
    std::vector<CheckResult> results;
    double timing = 0.0;

    bool all_pass() const;
    bool operator==(const RunReport&) const = default;
};

json to_json(const RunReport& r);
RunReport report_from_json(const json& j);

void print_table(std::ostream& os, const RunReport& r);

} // namespace mahler::cli

#endif
