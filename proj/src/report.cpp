// report.cpp

#include "mahler/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "mahler/errors.hpp"

namespace mahler::cli {

namespace {

// JSON has no inf/nan; keep them as strings so reports round-trip.
json num(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

double parse_num(const json& j)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan")
            return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
    }
    throw schema_error("report: expected a number, got " + j.dump());
}

const char* kind_name(CheckKind k)
{
    switch (k) {
    case CheckKind::eq:
        return "eq";
    case CheckKind::gt:
        return "gt";
    case CheckKind::info:
        return "info";
    }
    return "eq";
}

CheckKind parse_kind(const std::string& s)
{
    if (s == "eq")
        return CheckKind::eq;
    if (s == "gt")
        return CheckKind::gt;
    if (s == "info")
        return CheckKind::info;
    throw schema_error("report: unknown check kind '" + s + "'");
}

} // namespace

CheckResult check_eq(std::string name, double lhs, double rhs, double tol, std::string note)
{
    CheckResult c{std::move(name), lhs, rhs, std::abs(lhs - rhs), tol, false, CheckKind::eq, std::move(note)};
    c.pass = c.abs_diff <= tol;
    return c;
}

CheckResult check_gt(std::string name, double lhs, double rhs, double threshold, std::string note)
{
    CheckResult c{std::move(name), lhs, rhs, std::abs(lhs - rhs), threshold, false, CheckKind::gt, std::move(note)};
    c.pass = c.abs_diff > threshold;
    return c;
}

CheckResult info(std::string name, double lhs, double rhs, std::string note)
{
    CheckResult c{std::move(name), lhs, rhs, std::abs(lhs - rhs),
                  std::numeric_limits<double>::infinity(), true, CheckKind::info, std::move(note)};
    return c;
}

CheckResult failed_row(std::string name, const std::string& why)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {std::move(name), nan, nan, nan, 0.0, false, CheckKind::eq, why};
}

bool RunReport::all_pass() const
{
    for (const auto& r : results)
        if (r.kind != CheckKind::info && !r.pass)
            return false;
    return true;
}

json to_json(const RunReport& r)
{
    json rows = json::array();
    for (const auto& c : r.results) {
        json row = {{"name", c.name},       {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)},
                    {"abs_diff", num(c.abs_diff)}, {"tol", num(c.tol)}, {"pass", c.pass},
                    {"kind", kind_name(c.kind)}};
        if (!c.note.empty())
            row["note"] = c.note;
        rows.push_back(std::move(row));
    }
    return {{"command", r.command}, {"inputs", r.inputs}, {"results", rows}, {"timing", r.timing},
            {"all_pass", r.all_pass()}};
}

RunReport report_from_json(const json& j)
{
    try {
        RunReport r;
        r.command = j.at("command").get<std::string>();
        r.inputs = j.at("inputs");
        r.timing = parse_num(j.at("timing"));
        for (const auto& row : j.at("results")) {
            CheckResult c;
            c.name = row.at("name").get<std::string>();
            c.lhs = parse_num(row.at("lhs"));
            c.rhs = parse_num(row.at("rhs"));
            c.abs_diff = parse_num(row.at("abs_diff"));
            c.tol = parse_num(row.at("tol"));
            c.pass = row.at("pass").get<bool>();
            c.kind = parse_kind(row.value("kind", "eq"));
            c.note = row.value("note", "");
            r.results.push_back(std::move(c));
        }
        return r;
    } catch (const json::exception& e) {
        throw schema_error(std::string("report: ") + e.what());
    }
}

void print_table(std::ostream& os, const RunReport& r)
{
    os << r.command << "\n";
    char buf[512];
    std::snprintf(buf, sizeof buf, "  %-42s %22s %22s %10s %10s  %s\n", "check", "lhs", "rhs", "|diff|",
                  "tol", "result");
    os << buf;
    for (const auto& c : r.results) {
        const char* verdict = c.kind == CheckKind::info ? "info" : (c.pass ? "PASS" : "FAIL");
        const char* rel = c.kind == CheckKind::gt ? ">" : "";
        auto num = [](const char* f, double v) {
            char b[64];
            if (std::isnan(v) || std::isinf(v))
                return std::string("-");
            std::snprintf(b, sizeof b, f, v);
            return std::string(b);
        };
        std::snprintf(buf, sizeof buf, "  %-42s %22s %22s %10s %s%9s  %s\n", c.name.c_str(),
                      num("%.15g", c.lhs).c_str(), num("%.15g", c.rhs).c_str(), num("%.2e", c.abs_diff).c_str(),
                      rel, num("%.1e", c.tol).c_str(), verdict);
        os << buf;
        if (!c.note.empty())
            os << "      " << c.note << "\n";
    }
    std::snprintf(buf, sizeof buf, "  %s in %.2f s\n", r.all_pass() ? "all checks passed" : "FAILURES",
                  r.timing);
    os << buf;
}

} // namespace mahler::cli
