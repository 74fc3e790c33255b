#include <doctest.h>

#include <array>
#include <cmath>

#include "mahler/quad.hpp"
#include "mahler/specfun.hpp"

using namespace mahler::quad;
using mahler::specfun::pi;
using doctest::Approx;

TEST_CASE("textbook integrals")
{
    const auto r = integrate([](double x) { return std::sin(x); }, 0.0, pi, 1e-12);
    CHECK(std::abs(r.value - 2.0) < 1e-12);
    CHECK(r.error_estimate >= 0.0);
    CHECK(r.error_estimate <= 1e-12);

    const auto l = integrate([](double t) { return std::log(std::abs(2.0 * std::sin(t / 2.0))); }, 0.0, pi, 1e-10);
    CHECK(std::abs(l.value) < 1e-10);
}

TEST_CASE("breakpoints are honoured")
{
    const std::array<double, 1> bp{0.5};
    const auto r = integrate([](double) { return 1.0; }, 0.0, 1.0, bp, 1e-12);
    CHECK(r.value == Approx(1.0).epsilon(1e-15));
    CHECK(r.panels >= 2);
    // a kink at the breakpoint is integrated exactly
    const auto k = integrate([](double x) { return std::abs(x - 0.5); }, 0.0, 1.0, bp, 1e-14);
    CHECK(k.value == Approx(0.25).epsilon(1e-14));
}

TEST_CASE("additivity and orientation")
{
    auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
    const double whole = integrate(f, 0.0, 2.0, 1e-13).value;
    const double parts = integrate(f, 0.0, 0.7, 1e-13).value + integrate(f, 0.7, 2.0, 1e-13).value;
    CHECK(whole == Approx(parts).epsilon(1e-12));
    CHECK(integrate(f, 2.0, 0.0, 1e-13).value == Approx(-whole).epsilon(1e-14));
}

TEST_CASE("contour integrals")
{
    const std::array<cplx, 3> p1{cplx(0, 0), cplx(1, 0), cplx(1, 1)};
    const auto a = integrate_path([](cplx) { return cplx(1.0); }, p1, 1e-12);
    CHECK(std::abs(a.value - cplx(1, 1)) < 1e-13);

    const std::array<cplx, 2> p2{cplx(0, 0), cplx(0, 1)};
    const auto b = integrate_path([](cplx z) { return z; }, p2, 1e-12);
    CHECK(std::abs(b.value - cplx(-0.5, 0)) < 1e-13);

    // closed loop around a pole picks up 2 pi i
    std::vector<cplx> loop;
    for (int k = 0; k <= 64; ++k)
        loop.push_back(std::polar(1.0, 2.0 * pi * k / 64));
    const auto c = integrate_path([](cplx z) { return 1.0 / z; }, loop, 1e-12);
    CHECK(std::abs(c.value - cplx(0, 2.0 * pi)) < 1e-9);  // any loop with winding number 1
}
