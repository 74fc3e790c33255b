// acceptance: one line per acceptance criterion, exit status 1 if any gating
// criterion fails. Tolerances are pinned here and do not follow --tol.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mahler/elliptic.hpp"
#include "mahler/family.hpp"
#include "mahler/modular.hpp"
#include "mahler/recognize.hpp"
#include "mahler/specfun.hpp"
#include "mahler/suites.hpp"

namespace fam = mahler::family;
namespace ell = mahler::elliptic;
namespace mod = mahler::modular;
namespace rec = mahler::recognize;
using mahler::specfun::pi;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string sci(double v)
{
    char b[32];
    std::snprintf(b, sizeof b, "%.2e", v);
    return b;
}

std::vector<ell::EllCurveQ> curves;

double lprime(const std::string& label)
{
    auto E = ell::find_curve(curves, label);
    ell::root_number(E);
    return ell::l_values(E).Lprime0;
}

const ell::EllCurveQ& family_curve(long long k)
{
    const auto* E = ell::find_family_curve(curves, k);
    if (!E)
        throw std::runtime_error("no curve for k = " + std::to_string(k));
    return *E;
}

double lprime_family(long long k)
{
    auto E = family_curve(k);
    ell::root_number(E);
    return ell::l_values(E).Lprime0;
}

Outcome c1_hyper()
{
    double worst = 0.0, worst_uniform = 0.0, worst_a = 0.0;
    for (double a : {-0.9, -0.5, -0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 2.9}) {
        const double nt = fam::n_tilde(a);
        const auto cf = fam::closed_form_inside(a);
        if (std::abs(nt - cf.value) > worst) {
            worst = std::abs(nt - cf.value);
            worst_a = a;
        }
        worst_uniform = std::max(worst_uniform, std::abs(nt - cf.value_uniform_s));
    }
    std::ostringstream os;
    os << "max |n~ - 3F2| = " << sci(worst) << " (at alpha = " << worst_a << "); with s = -1/4 for alpha < 0: "
       << sci(worst_uniform);
    return {worst < 1e-8, os.str()};
}

Outcome c2_naR()
{
    double w8 = 0.0, w6 = 0.0;
    for (double a : {3.5, 4.0, 5.0, 10.0, -3.5, -6.0})
        w8 = std::max(w8, std::abs(fam::n_measure(a).n - fam::closed_form_outside(a)));
    for (double a : {3.0, -3.0})
        w6 = std::max(w6, std::abs(fam::n_measure(a).n - fam::closed_form_outside(a)));
    return {w8 < 1e-8 && w6 < 1e-6, "max diff " + sci(w8) + " (|alpha| > 3), " + sci(w6) + " (|alpha| = 3)"};
}

Outcome c3_main2()
{
    const double d = std::abs(fam::n_tilde(2.0) + 3.0 * lprime("19a3"));
    return {d < 1e-6, "|n~(2) + 3 L'(19a3)| = " + sci(d)};
}

Outcome c4_table2()
{
    const std::vector<std::pair<long long, std::pair<long long, long long>>> want{
        {1, {-1, 1}},  {2, {-5, 3}},  {3, {-2, 3}},  {4, {-1, 3}}, {8, {-3, 1}},
        {16, {-4, 3}}, {24, {-3, 1}}, {25, {-5, 3}}, {26, {-1, 6}}};
    bool ok = true;
    std::ostringstream os;
    for (auto [k, r] : want) {
        const double ratio = fam::n_tilde(std::cbrt(double(k))) / lprime_family(k);
        try {
            const auto g = rec::rational_reconstruct(ratio, 60, 1e-6);
            if (g.num != r.first || g.den != r.second) {
                ok = false;
                os << "k=" << k << " gave " << g.num << "/" << g.den << "; ";
            }
        } catch (const rec::no_candidate_error&) {
            ok = false;
            os << "k=" << k << " not recognized; ";
        }
    }
    // optional larger-conductor rows
    int matched = 0, total = 0;
    std::string misses;
    for (long long k = 5; k <= 23; ++k) {
        if (k == 8 || k == 16)
            continue;
        ++total;
        const auto& E = family_curve(k);
        const double ratio = fam::n_tilde(std::cbrt(double(k))) / lprime_family(k);
        if (std::abs(ratio - E.expected_r->convert_to<double>()) < 1e-5)
            ++matched;
        else
            misses += " k=" + std::to_string(k);
    }
    os << "9/9 required rows " << (ok ? "exact" : "NOT exact") << "; optional rows " << matched << "/" << total
       << " at 1e-5";
    if (!misses.empty())
        os << " (off:" << misses << ")";
    return {ok, os.str()};
}

Outcome c5_table1()
{
    const std::vector<std::pair<long long, double>> rows{{-216, 3.0}, {-27, 1.0},      {-8, 1.0}, {-1, 2.0},
                                                         {32, 8.0 / 3}, {54, 1.5}, {125, 7.0}};
    double worst = 0.0;
    for (auto [k, r] : rows) {
        const double a = std::cbrt(double(k));
        // quadrature for alpha in {-2, -1}; the 4F3 series elsewhere
        const double n = std::abs(a) < 3.0 ? fam::n_measure(a).n : fam::closed_form_outside(a);
        worst = std::max(worst, std::abs(n - r * lprime_family(k)));
    }
    return {worst < 1e-6, "max |n(alpha) - r L'| = " + sci(worst)};
}

Outcome c6_gdi()
{
    double worst = 0.0;
    std::string signs;
    for (double l : {1.1, 1.3, 1.5, 1.7, 1.9}) {
        const auto g = fam::lemma_gdi_check(l);
        worst = std::max(worst, std::abs(std::abs(g.lhs) - std::abs(g.rhs)));
        signs += g.sign > 0 ? "+" : "-";
    }
    const auto one = fam::lemma_gdi_check(1.0);
    const bool exact = one.lhs == one.rhs;
    return {worst < 1e-9 && exact,
            "max ||lhs| - |rhs|| = " + sci(worst) + ", signs " + signs + ", lambda=1 " + (exact ? "exact" : "NOT exact")};
}

Outcome c7_compd()
{
    double w1 = 0.0, w2 = 0.0;
    for (double a : {-0.5, 0.5, 1.5, 2.5}) {
        const auto d = fam::deriv_check(a);
        w1 = std::max(w1, std::abs(d.fd - d.cf2f1));
        w2 = std::max(w2, std::abs(d.cf2f1 - d.cfK));
    }
    return {w1 < 1e-5 && w2 < 1e-10, "fd vs 2F1 " + sci(w1) + ", 2F1 vs K " + sci(w2)};
}

Outcome c8_ypm()
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ua(-10.0, 10.0), ut(-pi, pi);
    double slack = 0.0, prod = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const auto b = fam::y_branches(ua(rng), ut(rng));
        slack = std::max({slack, std::abs(b.y_minus) - 1.0, 1.0 - std::abs(b.y_plus)});
        prod = std::max(prod, std::abs(std::abs(b.y_plus * b.y_minus) - 1.0));
    }
    return {slack <= 1e-12 && prod <= 1e-10,
            "worst ordering violation " + sci(std::max(slack, 0.0)) + ", max ||y+ y-| - 1| " + sci(prod)};
}

Outcome c9_smyth()
{
    const double d = std::abs(fam::n_measure(0.0).n - mahler::specfun::dirichlet_Lprime_chi3());
    return {d < 1e-9, "|n(0) - L'(chi_-3, -1)| = " + sci(d)};
}

Outcome c10_2d()
{
    double worst = 0.0;
    for (double a : {0.0, 2.0, 4.0})
        worst = std::max(worst, std::abs(fam::mahler2d(fam::Poly2D::P_alpha, a).value - fam::n_measure(a).n));
    auto fe_gap = [](double p) {
        const double c = std::cbrt(p);
        const double lhs = 3.0 * fam::mahler2d(fam::Poly2D::g_family, 1.0 / p).value;
        const double rhs = fam::n_measure((1.0 + 4.0 * p) / c).n + 4.0 * fam::n_measure((1.0 - 2.0 * p) / (c * c)).n;
        return std::abs(lhs - rhs);
    };
    const double fe = fe_gap(0.01);
    const double bad = fe_gap(-0.5);
    return {worst < 1e-4 && fe < 1e-4,
            "m(P) vs n max " + sci(worst) + ", FE at p=0.01 " + sci(fe) + ", FE gap at p=-1/2 " + sci(bad) +
                " (informational)"};
}

Outcome c11_periods()
{
    const auto P = ell::agm_periods(ell::find_curve(curves, "19a3"));
    const double d = std::abs(std::abs(P.omega_minus.imag()) - 4.12709);
    return {d < 1e-4, "|Im Omega-| = " + std::to_string(std::abs(P.omega_minus.imag()))};
}

Outcome c12_param()
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ur(0.0, 1.0), ui(0.3, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto xy = mod::param_xy_19({ur(rng), ui(rng)});
        worst = std::max(worst, std::abs(fam::q_poly(2.0, xy.x, xy.y)));
    }
    return {worst < 1e-8, "max |Q_2(x, y)| = " + sci(worst)};
}

Outcome c13_eta()
{
    const double u = mod::u_tau({0.5, 0.50586});
    const double q = mod::invert_u(2.0).q.real();
    std::ostringstream os;
    os.precision(10);
    os << "u = " << u << ", q = " << q;
    return {std::abs(u - 2.0) < 2e-3 && std::abs(q + 0.04165) < 1e-4, os.str()};
}

Outcome c14_dilog()
{
    const double s = mod::elliptic_dilog_sum(mod::invert_u(2.0).q.real()).value;
    const double d1 = std::abs(-9.0 / pi * s - fam::n_tilde(2.0));
    const double d2 = std::abs(9.0 / (2.0 * pi) * s - 1.5 * lprime("19a3"));
    return {d1 < 1e-6 && d2 < 1e-6, "corrected formula " + sci(d1) + ", Bloch-Grayson " + sci(d2)};
}

Outcome c15_negative()
{
    const double d = std::abs(fam::n_measure(2.0).n - 1.5 * lprime("19a3"));
    return {d > 1e-3, "|n(2) - (3/2) L'| = " + sci(d) + " (must exceed 1e-3)"};
}

Outcome c16_b11()
{
    const auto s = fam::s_family_b11();
    const double L = lprime("11a3");
    const double d = std::abs(s.combination + L);
    std::ostringstream os;
    os.precision(12);
    os << "combination = " << s.combination << ", -L' = " << -L << ", diff " << sci(d) << "; |comb - (+L')| = "
       << sci(std::abs(s.combination - L));
    return {d < 1e-5, os.str()};
}

Outcome c17_sa()
{
    const double a0 = std::cbrt(6.0 - 6.0 * std::cbrt(2.0) + 18.0 * std::cbrt(4.0));
    const double rhs = 0.5 * (lprime("F108") + lprime("F36") - 3.0 * lprime("F27"));
    const double d = std::abs(fam::closed_form_outside(a0) - rhs);
    return {d < 1e-5, "alpha0 = " + std::to_string(a0) + ", diff " + sci(d)};
}

Outcome c18_pslq()
{
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const auto r1 = rec::pslq({1.0, phi, phi * phi});
    const bool ok1 = r1.vector == std::vector<long long>{1, 1, -1};
    const auto r2 = rec::pslq({fam::n_tilde(2.0), lprime("19a3")});
    const bool ok2 = r2.vector == std::vector<long long>{1, 3};
    bool clean = false;
    double bound = 0.0;
    try {
        rec::pslq({pi, std::exp(1.0)}, 1e-10);
    } catch (const rec::no_relation_error& e) {
        clean = true;
        bound = e.norm_bound;
    }
    return {ok1 && ok2 && clean, std::string("golden ") + (ok1 ? "ok" : "FAIL") + ", main2 " + (ok2 ? "ok" : "FAIL") +
                                     ", (pi, e) " + (clean ? "no relation, norm bound " + sci(bound) : "FAIL")};
}

} // namespace

int main()
{
    curves = ell::load_curve_table(mahler::cli::default_curves_path());

    struct Criterion {
        int id;
        const char* what;
        std::function<Outcome()> run;
        bool gating = true;
    };
    const std::vector<Criterion> all{
        {1, "3F2 closed form for n~", c1_hyper},
        {2, "4F3 closed form for n", c2_naR},
        {3, "n~(2) = -3 L'(19a3)", c3_main2},
        {4, "rationals for n~, alpha in (-1,3)", c4_table2},
        {5, "rationals for n, alpha outside", c5_table1},
        {6, "lambda substitution integrals", c6_gdi},
        {7, "derivative of n~", c7_compd},
        {8, "|y-| <= 1 <= |y+|", c8_ypm},
        {9, "n(0) = L'(chi_-3, -1)", c9_smyth},
        {10, "two-variable measures", c10_2d},
        {11, "periods of 19a3", c11_periods},
        {12, "modular parametrization", c12_param},
        {13, "eta quotient", c13_eta},
        {14, "elliptic dilogarithm", c14_dilog},
        {15, "negative control", c15_negative},
        {16, "S_0 split = -L'(11a3)", c16_b11},
        {17, "alpha0 combination (stretch)", c17_sa, false},
        {18, "PSLQ sanity", c18_pslq},
    };

    int failed = 0;
    for (const auto& c : all) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const char* tag = o.pass ? "PASS" : (c.gating ? "FAIL" : "FAIL (non-gating)");
        std::printf("[%s] %2d %-32s %s\n", tag, c.id, c.what, o.detail.c_str());
        if (!o.pass && c.gating)
            ++failed;
    }
    std::printf("%d gating criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
