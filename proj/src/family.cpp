// family.cpp

#include "mahler/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mahler/errors.hpp"
#include "mahler/quad.hpp"
#include "mahler/specfun.hpp"

namespace mahler::family {

using specfun::pi;

namespace {

constexpr cplx I{0.0, 1.0};

double sgn(double v)
{
    return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
}

void require_inside(double alpha, const char* who)
{
    if (!(alpha > -1.0 && alpha < 3.0)) {
        std::ostringstream os;
        os << who << ": alpha must lie in (-1, 3), got " << alpha;
        throw domain_error(os.str());
    }
}

// 1/2 + sqrt(1/4 - 1/w), w = x (x - alpha)^2.
cplx half_plus_root(cplx x, cplx d)
{
    const cplx w = x * d * d;
    return 0.5 + std::sqrt(0.25 - 1.0 / w);
}

} // namespace

AlphaParam classify(double alpha)
{
    if (!std::isfinite(alpha))
        throw domain_error("alpha must be finite");
    if (alpha > -1.0 && alpha < 3.0)
        return {alpha, Region::inside};
    if (alpha == -1.0 || alpha == 3.0)
        return {alpha, Region::boundary};
    return {alpha, Region::outside};
}

std::string to_string(Region r)
{
    switch (r) {
    case Region::inside:
        return "inside";
    case Region::boundary:
        return "boundary";
    case Region::outside:
        return "outside";
    }
    return "?";
}

cplx q_poly(double alpha, cplx x, cplx y)
{
    return y * y + (x * x - alpha * x) * y + x;
}

BranchPair y_branches(double alpha, double theta)
{
    const cplx x = std::polar(1.0, theta);
    const cplx d = x - alpha;
    if (d == 0.0) {
        // alpha = 1, theta = 0: removable singularity.
        return {x, -I, I};
    }
    const cplx yp = -x * d * half_plus_root(x, d);
    return {x, yp, x / yp};
}

double log_abs_y_plus(double alpha, double theta)
{
    const cplx x = std::polar(1.0, theta);
    const cplx d = x - alpha;
    if (d == 0.0)
        return 0.0;
    return std::log(std::abs(d)) + std::log(std::abs(half_plus_root(x, d)));
}

double c_alpha(double alpha)
{
    if (!(alpha >= -1.0 && alpha <= 3.0))
        throw domain_error("c_alpha: alpha must lie in [-1, 3]");
    return std::acos((alpha - 1.0) / 2.0);
}

ToricData toric_points(double alpha)
{
    require_inside(alpha, "toric_points");
    const double re = (alpha - 1.0) / 2.0;
    const double im = std::sqrt((3.0 - alpha) * (alpha + 1.0)) / 2.0;
    const cplx yp{re, im};
    const cplx ym{re, -im};
    ToricData t{c_alpha(alpha), yp, ym, {}};
    t.points = {ToricPoint{"P1+", 1.0, yp}, ToricPoint{"P1-", 1.0, ym},
                ToricPoint{"P2+", yp, 1.0}, ToricPoint{"P2-", ym, 1.0},
                ToricPoint{"P3+", yp, yp},  ToricPoint{"P3-", ym, ym}};
    return t;
}

MeasureBreakdown n_measure(double alpha, double tol)
{
    auto f = [alpha](double th) { return log_abs_y_plus(alpha, th); };
    MeasureBreakdown out;
    if (classify(alpha).region == Region::inside) {
        const double c = c_alpha(alpha);
        const auto ri = quad::integrate(f, 0.0, c, tol * pi / 2.0);
        const auto rj = quad::integrate(f, c, pi, tol * pi / 2.0);
        out.I = ri.value / pi;
        out.J = rj.value / pi;
        out.n = *out.I + *out.J;
        out.n_tilde = *out.I - 2.0 * *out.J;
        out.err = (ri.error_estimate + rj.error_estimate) / pi;
        return out;
    }
    const auto r = quad::integrate(f, 0.0, pi, tol * pi);
    out.n = r.value / pi;
    out.err = r.error_estimate / pi;
    return out;
}

double j_integral(double alpha, double tol)
{
    require_inside(alpha, "j_integral");
    const double c = c_alpha(alpha);
    auto f = [alpha](double th) { return log_abs_y_plus(alpha, th); };
    return quad::integrate(f, c, pi, tol * pi).value / pi;
}

double n_tilde(double alpha, double tol)
{
    require_inside(alpha, "n_tilde");
    return *n_measure(alpha, tol).n_tilde;
}


namespace {

// sum_n prod (top)_n / prod (bottom)_n / n! at z = 1, for a series whose
// terms are n^{-2} times an asymptotic series in 1/n.
double sum_4f3_at_one(const std::vector<double>& top, const std::vector<double>& bottom)
{
    constexpr int levels = 8;
    constexpr long n0 = 500;
    std::array<double, levels> partial{};
    double term = 1.0, sum = 1.0;
    long n = 0;
    for (int j = 0; j < levels; ++j) {
        const long stop = n0 << j;
        for (; n < stop; ++n) {
            double r = 1.0 / (n + 1.0);
            for (double a : top)
                r *= a + n;
            for (double b : bottom)
                r /= b + n;
            term *= r;
            sum += term;
        }
        partial[j] = sum;  // terms 0..stop
    }
    // Eliminate A_k / N^k level by level (N doubles each step).
    for (int k = 1; k < levels; ++k) {
        const double f = std::ldexp(1.0, k);
        for (int j = levels - 1; j >= k; --j)
            partial[j] = (f * partial[j] - partial[j - 1]) / (f - 1.0);
    }
    return partial[levels - 1];
}

} // namespace

double closed_form_outside(double alpha)
{
    if (!(std::abs(alpha) >= 3.0)) {
        std::ostringstream os;
        os << "closed_form_outside: need |alpha| >= 3 for a convergent 4F3, got " << alpha;
        throw domain_error(os.str());
    }
    const double a3 = alpha * alpha * alpha;
    specfun::PFQParams p;
    p.top = {4.0 / 3.0, 5.0 / 3.0, 1.0, 1.0};
    p.bottom = {2.0, 2.0, 2.0};
    p.z = 27.0 / a3;
    // On z = -1 the series alternates and the direct sum is fine. On z = 1 the
    // terms decay like n^{-2} (1 + c1/n + ...), so S_N = S + A1/N + A2/N^2 + ...
    // and Richardson extrapolation over N = N0 2^j removes the slow tail.
    double f;
    if (p.z.real() > 1.0 - 1e-12)
        f = sum_4f3_at_one(p.top, p.bottom);
    else {
        p.tol = std::abs(p.z) > 1.0 - 1e-12 ? 1e-7 : 1e-16;
        f = specfun::pfq(p).value.real();
    }
    return std::log(std::abs(alpha)) - 2.0 / a3 * f;
}

HyperClosedForm hyper_constants(double alpha)
{
    const double s = sgn(alpha);
    HyperClosedForm h{};
    h.s_alpha = -(1.0 + 3.0 * s) * (1.0 + 3.0 * s) / 64.0;
    h.thm_prefactor = 4.0 / (1.0 - 3.0 * s);
    h.gamma_const_1 = std::cbrt(2.0) * specfun::gamma_real(1.0 / 6.0) *
                      specfun::gamma_real(1.0 / 3.0) * specfun::gamma_real(0.5) /
                      (std::sqrt(3.0) * pi * pi);
    const double g23 = specfun::gamma_real(2.0 / 3.0);
    h.gamma_const_2 = g23 * g23 * g23 / (2.0 * pi * pi);
    return h;
}

ClosedFormInside closed_form_inside(double alpha)
{
    require_inside(alpha, "closed_form_inside");
    if (alpha == 0.0)
        return {0.0, 0.0, true};
    const auto h = hyper_constants(alpha);
    const double z = alpha * alpha * alpha / 27.0;
    const double f1 =
        specfun::hyper({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, {2.0 / 3.0, 4.0 / 3.0}, z).real();
    const double f2 =
        specfun::hyper({2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0}, {4.0 / 3.0, 5.0 / 3.0}, z).real();
    const double bracket = h.gamma_const_1 * alpha * f1 + h.gamma_const_2 * alpha * alpha * f2;
    return {h.s_alpha * bracket, -0.25 * bracket, false};
}

cplx p_lambda(double lambda, cplx x)
{
    const double l2 = lambda * lambda;
    return x * (l2 - x) * (x * x + (4.0 / lambda - l2) * x + 4.0 / l2);
}

LambdaSub lambda_data(double lambda)
{
    if (!(lambda >= 1.0 && lambda <= 2.0))
        throw domain_error("lambda_data: lambda must lie in [1, 2]");
    const double l3 = lambda * lambda * lambda;
    LambdaSub s{};
    s.lambda = lambda;
    s.alpha = (l3 - 2.0) / lambda;
    s.x1 = lambda * lambda;
    const cplx disc = std::sqrt(cplx(l3 * (l3 - 8.0), 0.0));
    s.x2 = (l3 - 4.0 + disc) / (2.0 * lambda);
    s.x3 = (l3 - 4.0 - disc) / (2.0 * lambda);
    s.gamma = cplx((l3 - lambda - 2.0) / (2.0 * lambda),
                   (lambda + 1.0) / (2.0 * lambda) *
                       std::sqrt(std::max(0.0, (2.0 - lambda) * (l3 + lambda - 2.0))));
    return s;
}

LambdaSub solve_lambda(double alpha)
{
    require_inside(alpha, "solve_lambda");
    auto f = [alpha](double l) { return l * l * l - alpha * l - 2.0; };
    double lo = 1.0, hi = 2.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double l = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) {
        const double d = 3.0 * l * l - alpha;
        l -= f(l) / d;
    }
    return lambda_data(l);
}

GdiCheck lemma_gdi_check(double lambda, double tol)
{
    if (!(lambda >= 1.0 && lambda < 2.0))
        throw domain_error("lemma_gdi_check: lambda must lie in [1, 2)");
    const auto ld = lambda_data(lambda);
    const double l2 = lambda * lambda;

    // rhs: int_0^{-1/lambda} dx / sqrt(-p(x)); with x = -s^2 the 1/sqrt
    // endpoint singularity at 0 disappears.
    auto rhs_integrand = [&](double s) {
        const double x = -s * s;
        const double quadf = x * x + (4.0 / lambda - l2) * x + 4.0 / l2;
        return -2.0 / std::sqrt((l2 - x) * quadf);
    };
    const auto rhs_r = quad::integrate(rhs_integrand, 0.0, 1.0 / std::sqrt(lambda), tol);
    const cplx rhs = rhs_r.value;

    GdiCheck out{};
    out.rhs = rhs;
    if (lambda == 1.0) {
        // lambda - 1 = 0 and gamma = -1 = -1/lambda: both sides are the
        // same real integral.
        out.lhs = rhs;
        out.sign = 1;
        out.abs_diff = 0.0;
        return out;
    }

    const cplx z0 = lambda - 1.0;
    const cplx dz = ld.gamma - z0;
    auto minus_p = [&](double t) { return -p_lambda(lambda, z0 + t * dz); };

    // Locate crossings of -p over the negative real axis (cut of the
    // principal sqrt); the tracked root flips sign relative to the
    // principal one at each crossing.
    constexpr int samples = 4096;
    auto on_cut_side = [&](double t) { return std::signbit(minus_p(t).imag()); };
    std::vector<double> flips;
    for (int k = 0; k < samples; ++k) {
        double a = double(k) / samples, b = double(k + 1) / samples;
        const cplx va = minus_p(a), vb = minus_p(b);
        if (std::signbit(va.imag()) == std::signbit(vb.imag()))
            continue;
        const bool sa = on_cut_side(a);
        for (int it = 0; it < 80; ++it) {
            const double m = 0.5 * (a + b);
            (on_cut_side(m) == sa ? a : b) = m;
        }
        const double t = 0.5 * (a + b);
        if (minus_p(t).real() < 0.0)
            flips.push_back(t);
    }

    // Sign of each piece, seeded with the principal value at t = 1/2.
    std::vector<double> edges{0.0};
    edges.insert(edges.end(), flips.begin(), flips.end());
    edges.push_back(1.0);
    std::size_t seed_piece = 0;
    while (seed_piece + 1 < edges.size() - 1 && edges[seed_piece + 1] < 0.5)
        ++seed_piece;
    std::vector<int> piece_sign(edges.size() - 1, 1);
    for (std::size_t i = seed_piece + 1; i < piece_sign.size(); ++i)
        piece_sign[i] = -piece_sign[i - 1];
    for (std::size_t i = seed_piece; i-- > 0;)
        piece_sign[i] = -piece_sign[i + 1];

    cplx lhs = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double sgn_piece = piece_sign[i];
        auto g = [&](double t) { return sgn_piece * dz / std::sqrt(minus_p(t)); };
        lhs += quad::integrate_complex(g, edges[i], edges[i + 1], {}, tol).value;
    }

    out.lhs = lhs;
    out.branch_flips = flips;
    const double dplus = std::abs(lhs - rhs);
    const double dminus = std::abs(lhs + rhs);
    out.sign = dplus <= dminus ? 1 : -1;
    out.abs_diff = std::min(dplus, dminus);
    return out;
}

cplx f_lambda(double lambda, cplx x, cplx y)
{
    const double l = lambda;
    const double l2 = l * l;
    const double k1 = l * (l - 1.0) * (l * l * l - l2 + l - 2.0);
    const double kxy = std::pow(l, 7) - 2.0 * std::pow(l, 6) + 2.0 * std::pow(l, 5) -
                       5.0 * std::pow(l, 4) + 6.0 * l * l2 - 6.0 * l2 + 6.0 * l - 4.0;
    return l2 * (l - 1.0) * x * x * y * y - k1 * (x * x * y + x * y * y) + l2 * (x * x + y * y) +
           kxy * x * y - 2.0 * l2 * (l - 1.0) * (x + y) + l2 * (l - 1.0) * (l - 1.0);
}

FLambdaCheck f_lambda_check(double lambda, int samples)
{
    if (!(lambda >= 1.0 && lambda < 2.0))
        throw domain_error("f_lambda_check: lambda must lie in [1, 2)");
    if (samples < 1)
        throw domain_error("f_lambda_check: samples must be positive");

    const double l = lambda;
    const double l2 = l * l;
    const double k1 = l * (l - 1.0) * (l * l * l - l2 + l - 2.0);
    const double kxy = std::pow(l, 7) - 2.0 * std::pow(l, 6) + 2.0 * std::pow(l, 5) -
                       5.0 * std::pow(l, 4) + 6.0 * l * l2 - 6.0 * l2 + 6.0 * l - 4.0;
    const double c2 = l2 * (l - 1.0);
    const double c0 = l2 * (l - 1.0) * (l - 1.0);
    const double c1 = 2.0 * l2 * (l - 1.0);

    // F = A(x) y^2 + B(x) y + C(x)
    auto coeffs = [&](double x) {
        const double A = c2 * x * x - k1 * x + l2;
        const double B = -k1 * x * x + kxy * x - c1;
        const double C = l2 * x * x - c1 * x + c0;
        return std::array<double, 3>{A, B, C};
    };
    auto roots = [&](double x) {
        const auto [A, B, C] = coeffs(x);
        const cplx disc = std::sqrt(cplx(B * B - 4.0 * A * C, 0.0));
        const cplx q = -0.5 * (B + (B >= 0.0 ? disc : -disc));
        return std::array<cplx, 2>{q / A, C / q};
    };
    auto dydx = [&](double x, cplx y) {
        const cplx fx = 2.0 * c2 * x * y * y - k1 * (2.0 * x * y + y * y) + 2.0 * l2 * x +
                        kxy * y - c1;
        const cplx fy = 2.0 * c2 * x * x * y - k1 * (x * x + 2.0 * x * y) + 2.0 * l2 * y +
                        kxy * x - c1;
        return -fx / fy;
    };

    FLambdaCheck out{0.0, 0.0, 0.0};
    if (lambda == 1.0) {
        // F_1 = (x - y)^2: the branch is y = x with dy/dx = 1 = p(y)/p(x).
        out.y_near_left = -1.0;
        out.y_near_zero = 0.0;
        return out;
    }

    const auto ld = lambda_data(lambda);
    cplx prev = ld.gamma;
    auto track = [&](double x) {
        const auto r = roots(x);
        // Upper half disk; the two roots are conjugate on this interval.
        cplx best = std::abs(r[0] - prev) <= std::abs(r[1] - prev) ? r[0] : r[1];
        if (best.imag() < 0.0)
            best = std::conj(best);
        if (std::abs(best - prev) > 0.25) {
            std::ostringstream os;
            os << "f_lambda_check: root tracking jumped at x = " << x;
            throw numerical_error(os.str());
        }
        prev = best;
        return best;
    };

    const double x_left = -1.0 / l;
    out.y_near_left = track(x_left + 1e-12);
    for (int j = 0; j < samples; ++j) {
        const double x = x_left * (1.0 - (j + 0.5) / samples);
        const cplx y = track(x);
        const cplx d = dydx(x, y);
        const cplx res = d * d - p_lambda(l, y) / p_lambda(l, x);
        out.max_residual = std::max(out.max_residual, std::abs(res));
    }
    for (double x = x_left / (2.0 * samples); x < -1e-14; x *= 0.5)
        track(x);
    out.y_near_zero = track(-1e-14);
    return out;
}

KFormParams k_form_params(double lambda)
{
    const double l3 = lambda * lambda * lambda;
    const double S = std::sqrt(l3 + 1.0);
    KFormParams k{};
    k.A1 = (l3 + 2.0 - 2.0 * S) / (4.0 * S);
    k.B1 = (-l3 - 2.0 - 2.0 * S) / (4.0 * S);
    k.A2 = (-l3 + 2.0 + 2.0 * S) / (4.0 * S);
    k.B2 = (l3 - 2.0 + 2.0 * S) / (4.0 * S);
    k.t1 = -(l3 + 2.0 - 2.0 * S) / l3;
    k.t2 = -k.t1;
    k.rho = (l3 * l3 - 4.0 * l3 - 8.0 + 8.0 * S) / (16.0 * S);
    return k;
}

DerivCheck deriv_check(double alpha, double h)
{
    if (!(alpha > -1.0 + 2.0 * h && alpha < 3.0 - 2.0 * h && std::abs(alpha) > 2.0 * h)) {
        std::ostringstream os;
        os << "deriv_check: alpha must be in (-1,0) u (0,3) at distance >= 2h, got " << alpha;
        throw domain_error(os.str());
    }
    DerivCheck d{};
    constexpr double tight = 1e-14;
    d.fd = (n_tilde(alpha + h, tight) - n_tilde(alpha - h, tight)) / (2.0 * h);

    const double lambda = solve_lambda(alpha).lambda;
    const double y = lambda * lambda * lambda;
    const std::vector<double> top{1.0 / 3.0, 2.0 / 3.0};
    const std::vector<double> bottom{1.0};
    if (alpha > 0.0) {
        const double z = 27.0 * y * y / ((y + 4.0) * (y + 4.0) * (y + 4.0));
        d.cf2f1 = -(2.0 * lambda) / (y + 4.0) * specfun::hyper(top, bottom, z).real();
    } else {
        const double z = 27.0 * y * y / ((y + 4.0) * (y + 4.0) * (y + 4.0));
        d.cf2f1 = (1.0 / alpha) * (4.0 - 2.0 * y) / (y + 4.0) * specfun::hyper(top, bottom, z).real();
    }

    const auto k = k_form_params(lambda);
    const double S = std::sqrt(y + 1.0);
    const double m = k.A1 * k.B2 / (k.A2 * k.B1);
    d.cfK = -4.0 * lambda / (pi * std::sqrt((S + 1.0) * (S + 1.0) * (S + 1.0) * (3.0 - S))) *
            specfun::ellK_param(m);
    return d;
}

BoundaryLimits boundary_limits(double alpha, double delta)
{
    require_inside(alpha, "boundary_limits");
    const double c = c_alpha(alpha);
    // y(delta) = L + a sqrt(delta) + O(delta) near the kinks; the combination
    // 2 y(delta/4) - y(delta) removes the sqrt term.
    auto lim = [&](double theta0, double dir, bool plus) {
        auto at = [&](double d) {
            const auto b = y_branches(alpha, theta0 + dir * d);
            return plus ? b.y_plus : b.y_minus;
        };
        return 2.0 * at(delta / 4.0) - at(delta);
    };
    BoundaryLimits b{};
    b.yplus_minus_c_from_right = lim(-c, +1.0, true);
    b.yplus_c_from_left = lim(c, -1.0, true);
    b.yplus_zero_from_right = lim(0.0, +1.0, true);
    b.yplus_zero_from_left = lim(0.0, -1.0, true);
    b.yminus_c_from_right = lim(c, +1.0, false);
    b.yminus_minus_c_from_left = lim(-c, -1.0, false);
    return b;
}

Mahler2D mahler2d(Poly2D poly, double alpha, double tol)
{
    if (!(tol >= 1e-7))
        throw domain_error("mahler2d: tol below the nested-quadrature floor (1e-7)");

    auto value = [poly, alpha](cplx x, cplx y) -> cplx {
        if (poly == Poly2D::P_alpha)
            return x * x * x + y * y * y + 1.0 - alpha * x * y;
        return (x + 1.0) * (y + 1.0) * (x + y) - alpha * x * y;
    };

    // Real coefficients: log|P| is invariant under (theta, phi) -> -(theta, phi),
    // so integrate theta over [0, pi] and double.
    const double inner_tol = tol * 1e-2;
    auto inner = [&](double theta) {
        const cplx x = std::polar(1.0, theta);
        auto g = [&](double phi) {
            const double a = std::abs(value(x, std::polar(1.0, phi)));
            return a > 0.0 ? std::log(a) : -745.0;
        };
        return quad::integrate(g, -pi, pi, inner_tol).value;
    };
    const auto r = quad::integrate(inner, 0.0, pi, tol * 2.0 * pi * pi * 0.5);

    Mahler2D out{};
    out.value = r.value / (2.0 * pi * pi);
    out.err = r.error_estimate / (2.0 * pi * pi);
    out.meets_torus = poly == Poly2D::P_alpha ? (alpha >= -1.0 && alpha <= 3.0)
                                              : (alpha >= -1.0 && alpha <= 8.0);
    return out;
}

cplx s0_y_minus(cplx x)
{
    // -((x^2+1)/2)(1 - sqrt(1 - w)), w = 4x^3/(x^2+1)^2, rewritten as
    // -2x^3 / ((x^2+1)(1 + sqrt(1 - w))) to avoid cancellation for small w.
    const cplx s = x * x + 1.0;
    const cplx w = 4.0 * x * x * x / (s * s);
    return -2.0 * x * x * x / (s * (1.0 + std::sqrt(1.0 - w)));
}

SplitIntegral s_family_b11(double tol)
{
    auto f = [](double th) { return std::log(std::abs(s0_y_minus(std::polar(1.0, th)))); };
    SplitIntegral s{};
    s.first = quad::integrate(f, 0.0, pi / 2.0, tol * pi).value / pi;
    s.second = quad::integrate(f, pi / 2.0, pi, tol * pi).value / pi;
    s.combination = s.first - s.second;
    return s;
}

} // namespace mahler::family
