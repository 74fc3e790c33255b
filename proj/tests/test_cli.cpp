#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "mahler/errors.hpp"
#include "mahler/suites.hpp"

using namespace mahler::cli;

TEST_CASE("check rows")
{
    const auto a = check_eq("a", 1.0, 1.0 + 1e-9, 1e-8);
    CHECK(a.pass);
    CHECK(a.abs_diff == doctest::Approx(1e-9));
    CHECK_FALSE(check_eq("b", 1.0, 2.0, 0.5).pass);
    CHECK(check_eq("edge", 1.0, 1.5, 0.5).pass);  // pass iff diff <= tol
    CHECK(check_gt("c", 1.0, 2.0, 0.5).pass);
    CHECK_FALSE(check_gt("d", 1.0, 1.1, 0.5).pass);
    CHECK(info("e", 1.0, 5.0).pass);
    CHECK_FALSE(failed_row("f", "boom").pass);
    CHECK_FALSE(check_eq("nan", std::nan(""), 1.0, 1.0).pass);
}

TEST_CASE("report JSON round trip")
{
    RunReport r;
    r.command = "verify x";
    r.inputs = {{"alpha", 2.0}, {"k", {1, 2, 3}}};
    r.results = {check_eq("a", 0.1, 0.1 + 3e-17, 1e-12, "note"), check_gt("b", 1.0, 0.0, 0.5),
                 info("c", std::numeric_limits<double>::quiet_NaN(), 1.0), failed_row("d", "why")};
    r.timing = 0.25;
    const auto j = to_json(r);
    CHECK(j["all_pass"] == false);
    const auto back = report_from_json(json::parse(j.dump()));
    CHECK(back.command == r.command);
    CHECK(back.inputs == r.inputs);
    REQUIRE(back.results.size() == r.results.size());
    CHECK(back.results[0] == r.results[0]);
    CHECK(back.results[1] == r.results[1]);
    CHECK(std::isnan(back.results[2].lhs));
    CHECK(std::isinf(back.results[2].tol));
    CHECK(back.results[3].note == r.results[3].note);
    CHECK(back.timing == r.timing);
    CHECK_THROWS_AS(report_from_json(json::parse(R"({"command": 3})")), mahler::schema_error);
}

TEST_CASE("measure command")
{
    const auto r = cmd_measure(2.0, {});
    CHECK(r.all_pass());
    bool saw_l = false;
    for (const auto& c : r.results)
        if (c.name.find("L'(19a3)") != std::string::npos) {
            saw_l = true;
            CHECK(c.pass);
        }
    CHECK(saw_l);
    CHECK(cmd_measure(0.0, {}).all_pass());
    CHECK(cmd_measure(5.0, {}).all_pass());
    CHECK(cmd_measure(-6.0, {}).all_pass());
}

TEST_CASE("table2 command isolates rows")
{
    const auto r = cmd_table2({1, 16, 24, 500}, {});
    REQUIRE(r.results.size() == 4);
    CHECK(r.results[0].pass);
    CHECK(r.results[0].rhs == -1.0);
    CHECK(r.results[1].pass);
    CHECK(r.results[2].pass);
    CHECK_FALSE(r.results[3].pass);  // k outside (-1, 27)
    CHECK_FALSE(r.all_pass());

    // k = 24 is the same as n(-6) up to sign
    CHECK(r.results[2].lhs == doctest::Approx(-3.0).epsilon(1e-9));
}

TEST_CASE("verify rejects unknown suites")
{
    CHECK_THROWS_AS(cmd_verify("nope", {}), std::invalid_argument);
    CHECK(suite_names().size() == 11);
}

TEST_CASE("scan output")
{
    const auto rows = scan(2.5, 3.5, 5);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].alpha == 2.5);
    CHECK(rows[4].alpha == 3.5);
    CHECK(rows[0].n_tilde);
    CHECK_FALSE(rows[3].n_tilde);
    for (const auto& r : rows) {
        REQUIRE(r.abs_diff);
        CHECK(*r.abs_diff < 1e-8);
    }
    // deterministic and ordered
    const auto again = scan(2.5, 3.5, 5);
    for (std::size_t i = 0; i < rows.size(); ++i)
        CHECK(again[i].n == rows[i].n);

    const std::string path = "scan_test.csv";
    write_scan_csv(path, rows);
    std::ifstream in(path);
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "alpha,n,I,J,n_tilde,closed_form,abs_diff");
    int count = 0;
    while (std::getline(in, line))
        ++count;
    CHECK(count == 5);
    std::remove(path.c_str());

    CHECK_THROWS_AS(scan(1.0, 0.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(scan(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("scan of the interior with the sign-dependent and the uniform s")
{
    const auto signed_s = scan(-0.9, 2.9, 39);
    const auto uniform = scan(-0.9, 2.9, 39, true);
    for (std::size_t i = 0; i < signed_s.size(); ++i) {
        CHECK(*uniform[i].abs_diff < 1e-8);
        if (signed_s[i].alpha > 0.0)
            CHECK(*signed_s[i].abs_diff < 1e-8);
    }
}
