// mahler_cli: front end for the measure/table/verify/scan commands.
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 numerical failure,
// 3 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mahler/errors.hpp"
#include "mahler/suites.hpp"

namespace {

enum Exit { ok = 0, check_failed = 1, numerical = 2, usage = 3 };

int emit(const mahler::cli::RunReport& rep, bool as_json, const std::string& out)
{
    if (as_json)
        std::cout << mahler::cli::to_json(rep).dump(2) << '\n';
    else
        mahler::cli::print_table(std::cout, rep);
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f)
            throw std::runtime_error("cannot write " + out);
        f << mahler::cli::to_json(rep).dump(2) << '\n';
    }
    return rep.all_pass() ? ok : check_failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mahler measure of y^2 + (x^2 - alpha x) y + x: quadrature, closed forms, L-values, modular checks"};
    app.require_subcommand(1);

    mahler::cli::Options opt;
    bool as_json = false;
    std::string out;
    double tol = 0.0;
    app.add_option("--curves", opt.curves, "curve table (default: " + mahler::cli::default_curves_path() + ")");
    auto* tol_opt = app.add_option("--tol", tol,
                                   "measure: quadrature tolerance (default 1e-13); "
                                   "table2: ratio tolerance (default 1e-6); "
                                   "verify: overrides every check tolerance (defaults are per check)");
    app.add_option("--terms", opt.terms, "q-series truncation override (0 = automatic)")->check(CLI::NonNegativeNumber);
    app.add_flag("--json", as_json, "print the report as JSON");
    app.add_option("--out", out, "write the JSON report (or the scan CSV) to PATH");
    app.fallthrough();

    double alpha = 0.0;
    auto* measure = app.add_subcommand("measure", "n(alpha), and I, J, n~ with closed forms when available");
    measure->add_option("alpha", alpha, "real parameter")->required();

    std::vector<long long> subset;
    auto* table2 = app.add_subcommand("table2", "n~(k^{1/3}) / L'(E, 0) against the expected rationals");
    table2->add_option("--subset", subset, "k values (default 1..26)")->delimiter(',');

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run one acceptance suite");
    verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(mahler::cli::suite_names()));

    double amin = 0.0, amax = 0.0;
    int steps = 0;
    bool uniform_s = false;
    auto* scan = app.add_subcommand("scan", "tabulate n, I, J, n~ and closed forms on a grid (CSV)");
    scan->add_option("alpha_min", amin)->required();
    scan->add_option("alpha_max", amax)->required();
    scan->add_option("steps", steps)->required()->check(CLI::Range(2, 1000000));
    scan->add_flag("--uniform-s", uniform_s, "use s = -1/4 for both signs in the 3F2 column");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }
    if (*tol_opt)
        opt.tol = tol;

    try {
        if (*measure)
            return emit(mahler::cli::cmd_measure(alpha, opt), as_json, out);
        if (*table2)
            return emit(mahler::cli::cmd_table2(subset, opt), as_json, out);
        if (*verify)
            return emit(mahler::cli::cmd_verify(suite, opt), as_json, out);
        if (*scan) {
            if (!(amin < amax)) {
                std::cerr << "scan: alpha_min must be below alpha_max\n";
                return usage;
            }
            if (out.empty()) {
                std::cerr << "scan: --out PATH is required\n";
                return usage;
            }
            const auto rows = mahler::cli::scan(amin, amax, steps, uniform_s);
            mahler::cli::write_scan_csv(out, rows);
            std::cout << rows.size() << " rows written to " << out << '\n';
            return ok;
        }
    } catch (const mahler::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return numerical;
    } catch (const mahler::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return numerical;
    }
    return usage;
}
