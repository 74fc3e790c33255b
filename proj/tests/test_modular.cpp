#include <doctest.h>

#include <cmath>
#include <random>

#include "mahler/elliptic.hpp"
#include "mahler/errors.hpp"
#include "mahler/family.hpp"
#include "mahler/modular.hpp"
#include "mahler/specfun.hpp"

using namespace mahler::modular;
using mahler::specfun::pi;
using doctest::Approx;

namespace {

// level 19 newform, a_1..a_40, by multiplicativity from a_p (p <= 37)
std::vector<long long> newform19()
{
    const auto E = mahler::elliptic::make_curve("19a3", {0, 1, 1, 1, 0}, 19);
    return mahler::elliptic::an_coeffs(E, 40).a;
}

QExpansion random_series(std::mt19937_64& rng, rational e0, int n)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    QExpansion s;
    s.e0 = e0;
    for (int k = 0; k <= n; ++k)
        s.c.emplace_back(u(rng), u(rng));
    s.c[0] += 2.0;  // keep the leading coefficient away from 0
    return s;
}

} // namespace

TEST_CASE("eta")
{
    const double expected = mahler::specfun::gamma_real(0.25) / (2.0 * std::pow(pi, 0.75));
    CHECK(expected == Approx(0.7682254223260567).epsilon(1e-14));
    CHECK(std::abs(eta({0, 1}) - expected) < 1e-14);
    const cplx tau(0.5, 1.0);
    CHECK(std::abs(eta(tau + 1.0) - std::polar(1.0, pi / 12.0) * eta(tau)) < 1e-14);
    // |eta| ~ |q|^{1/24} high up
    const cplx high(0.2, 6.0);
    CHECK(std::abs(eta(high)) == Approx(std::pow(std::abs(q_of(high)), 1.0 / 24.0)).epsilon(1e-12));
    // q-expansion route
    CHECK(std::abs(eta_qexp(60)(tau) - eta(tau)) < 1e-14);
    CHECK_THROWS_AS(eta({0.0, -1.0}), mahler::domain_error);
}

TEST_CASE("q-expansion arithmetic")
{
    std::mt19937_64 rng(5);
    const auto a = random_series(rng, rational(1, 3), 12);
    const auto b = random_series(rng, rational(-1, 2), 12);
    const auto c = random_series(rng, rational(2), 12);
    CHECK((a * b).e0 == rational(-1, 6));
    CHECK((a * b).n_max() == 12);
    const auto l = (a * b) * c, r = a * (b * c);
    for (int k = 0; k <= 12; ++k)
        CHECK(std::abs(l.c[k] - r.c[k]) < 1e-12);
    const auto one = a * inverse(a);
    CHECK(one.e0 == rational(0));
    CHECK(std::abs(one.c[0] - 1.0) < 1e-14);
    for (int k = 1; k <= 12; ++k)
        CHECK(std::abs(one.c[k]) < 1e-12);
    // evaluation agrees with the product of evaluations to truncation order
    const cplx tau(0.1, 2.5);
    CHECK(std::abs((a * b)(tau) - a(tau) * b(tau)) < 1e-30 + 1e-12 * std::abs(a(tau) * b(tau)));
    CHECK_THROWS_AS(a + b, mahler::domain_error);
}

TEST_CASE("j-invariant")
{
    CHECK(std::abs(j_invariant({0, 1}) - 1728.0) < 1e-8);
    CHECK(std::abs(j_invariant(std::polar(1.0, pi / 3.0))) < 1e-7);
}

TEST_CASE("eta quotient u on the family line")
{
    const auto p = invert_u(2.0);
    CHECK(p.tau.real() == 0.5);
    CHECK(p.tau.imag() == Approx(0.50586049506575).epsilon(1e-11));
    CHECK(p.q.real() == Approx(-0.04165161106522).epsilon(1e-10));
    CHECK(p.q.imag() == 0.0);
    CHECK(std::abs(u_tau({0.5, 0.50586}) - 2.0) < 2e-3);
    for (double a : {0.5, 1.0, 2.5})
        CHECK(u_tau(invert_u(a).tau) == Approx(a).epsilon(1e-10));
    const double top = u_tau({0.5, 4.0});
    CHECK(top < 3.0);
    CHECK(top > 3.0 - 1e-9);
    CHECK_THROWS_AS(invert_u(3.5), mahler::domain_error);
}

TEST_CASE("Siegel units")
{
    CHECK(bernoulli_B2(rational(1, 19)) == rational(1, 361) - rational(1, 19) + rational(1, 6));
    CHECK(siegel_exponent(19, 1) == rational(19) * bernoulli_B2(rational(1, 19)) / 2);
    const cplx tau(0.3, 0.9);
    for (int a = 1; a < 19; ++a) {
        CHECK(std::abs(siegel_g(19, a, tau) - siegel_g(19, 19 - a, tau)) < 1e-14 * std::abs(siegel_g(19, a, tau)));
        CHECK(std::abs(siegel_g_via_log(19, a, tau) / siegel_g(19, a, tau) - 1.0) < 1e-12);
        CHECK(std::abs(siegel_g_qexp(19, a, 80)(tau) / siegel_g(19, a, tau) - 1.0) < 1e-12);
    }
    const cplx high(0.0, 8.0);
    const double e = boost::rational_cast<double>(siegel_exponent(19, 3));
    CHECK(std::abs(siegel_g(19, 3, high)) == Approx(std::pow(std::abs(q_of(high)), e)).epsilon(1e-9));
    CHECK_THROWS_AS(siegel_g(19, 19, tau), mahler::domain_error);
}

TEST_CASE("modular parametrization of Q_2")
{
    const auto xy = param_xy_19({0.5, 1.0});
    CHECK(std::abs(mahler::family::q_poly(2.0, xy.x, xy.y)) < 1e-8);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ur(-0.5, 0.5), ui(0.3, 2.0);
    for (int i = 0; i < 20; ++i) {
        const cplx tau(ur(rng), ui(rng));
        const auto p = param_xy_19(tau);
        const double scale = 1.0 + std::norm(p.x) * std::abs(p.y) + std::norm(p.y);
        CHECK(std::abs(mahler::family::q_poly(2.0, p.x, p.y)) < 1e-8 * scale);
    }
    // the q-expansions agree with the products and fix the leading orders:
    // x has a simple pole and y a simple zero at the cusp
    const auto qx = param_x19_qexp(60), qy = param_y19_qexp(60);
    CHECK(qx.e0 == rational(-1));
    CHECK(qy.e0 == rational(1));
    const cplx tau(0.1, 1.2);
    const auto p = param_xy_19(tau);
    CHECK(std::abs(qx(tau) / p.x - 1.0) < 1e-12);
    CHECK(std::abs(qy(tau) / p.y - 1.0) < 1e-12);
}

TEST_CASE("Eisenstein series and f_{a,b;c}")
{
    const auto e = eis_e(19, 2, 5, 10);
    CHECK(std::abs(e.c[0].real()) < 1e-14);
    const auto f = eis_e(19, 5, 2, 10);
    for (int k = 0; k <= 10; ++k)
        CHECK(std::abs(e.c[k] - f.c[k]) < 1e-13);
    CHECK_THROWS_AS(eis_e(19, 19, 1, 5), mahler::domain_error);

    const auto an = newform19();
    // no single triple is proportional to the newform...
    CHECK(find_f_abc_newform(19, an, 40).empty());
    // ...but the newform lies in their span
    const auto s = newform_span_check(19, an, 40);
    CHECK(s.rank > 1);
    CHECK(s.relative_residual < 1e-10);
}

TEST_CASE("elliptic dilogarithm sum")
{
    const double d3 = mahler::specfun::bloch_wigner(std::polar(1.0, 2.0 * pi / 3.0));
    CHECK(elliptic_dilog_sum(1e-12).value == Approx(d3).epsilon(1e-10));

    // folded sum against a plain two-sided sum
    const double q = -0.04165161106522;
    const auto s = elliptic_dilog_sum(q);
    const cplx z3 = std::polar(1.0, 2.0 * pi / 3.0);
    double direct = 0.0;
    for (int n = -30; n <= 30; ++n)
        direct += mahler::specfun::bloch_wigner(z3 * std::pow(q, n));
    CHECK(s.value == Approx(direct).epsilon(1e-12));
    CHECK(-9.0 / pi * s.value == Approx(mahler::family::n_tilde(2.0)).epsilon(1e-9));
    CHECK_THROWS_AS(elliptic_dilog_sum(1.0), mahler::domain_error);
}
