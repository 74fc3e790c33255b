// suites.hpp
//
// The checks behind the CLI commands. Each returns a RunReport; numerical
// failures propagate as exceptions except where rows are isolated (table2).

#ifndef MAHLER_SUITES_HPP
#define MAHLER_SUITES_HPP

#include <optional>
#include <string>
#include <vector>

#include "mahler/report.hpp"

namespace mahler::cli {

struct Options {
    std::string curves;         // curve table path
    std::optional<double> tol;  // overrides check tolerances (verify) or quadrature tol (measure)
    int terms = 0;              // q-series truncation; 0 = automatic
};

std::string default_curves_path();

const std::vector<std::string>& suite_names();

RunReport cmd_measure(double alpha, const Options& opt);
RunReport cmd_table2(const std::vector<long long>& subset, const Options& opt);
RunReport cmd_verify(const std::string& suite, const Options& opt);

struct ScanRow {
    double alpha;
    double n;
    std::optional<double> I, J, n_tilde, closed_form, abs_diff;
};

// Rows in input order; evaluated in parallel.
std::vector<ScanRow> scan(double alpha_min, double alpha_max, int steps, bool uniform_s = false);
void write_scan_csv(const std::string& path, const std::vector<ScanRow>& rows);

// Runs fn(i) for i in [0, n) on a small thread pool.
template <class Fn>
void parallel_for(int n, Fn fn);

} // namespace mahler::cli

#include "mahler/detail/parallel.hpp"

#endif
