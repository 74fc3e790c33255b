// specfun.cpp

#include "mahler/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mahler/errors.hpp"

namespace mahler::specfun {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// Lanczos approximation, g = 7, n = 9.
constexpr std::array<double, 9> lanczos_coeffs = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Neumaier-compensated complex accumulator.
struct CompensatedSum {
    cplx sum{0.0, 0.0};
    cplx comp{0.0, 0.0};

    static double add(double& s, double& c, double x)
    {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
        return s;
    }

    void operator+=(cplx x)
    {
        double sr = sum.real(), si = sum.imag();
        double cr = comp.real(), ci = comp.imag();
        add(sr, cr, x.real());
        add(si, ci, x.imag());
        sum = {sr, si};
        comp = {cr, ci};
    }

    cplx value() const { return sum + comp; }
};

bool is_nonpositive_integer(double v)
{
    return v <= 0.0 && v == std::floor(v);
}

// Bernoulli numbers B_0..B_30 (odd ones beyond B_1 vanish).
constexpr std::array<double, 31> bernoulli = {
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
    0.0,
    854513.0 / 138.0,
    0.0,
    -236364091.0 / 2730.0,
    0.0,
    8553103.0 / 6.0,
    0.0,
    -23749461029.0 / 870.0,
    0.0,
    8615841276005.0 / 14322.0};

cplx li2_power_series(cplx z)
{
    cplx term = z;
    cplx sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        const cplx t = term / double(k * k);
        sum += t;
        if (std::abs(t) < eps * std::abs(sum))
            break;
        term *= z;
    }
    return sum;
}

// Li2(z) = sum_n B_n u^{n+1}/(n+1)!, u = -log(1-z); needs |u| < 2 pi.
cplx li2_bernoulli(cplx z)
{
    const cplx u = -std::log(1.0 - z);
    cplx upow = u;        // u^{n+1}
    double fact = 1.0;    // (n+1)!
    cplx sum = 0.0;
    for (std::size_t n = 0; n < bernoulli.size(); ++n) {
        if (bernoulli[n] != 0.0) {
            const cplx t = bernoulli[n] * upow / fact;
            sum += t;
            if (n > 2 && std::abs(t) < eps * std::abs(sum))
                break;
        }
        upow *= u;
        fact *= double(n + 2);
    }
    return sum;
}

cplx li2_unit_disk(cplx z)
{
    if (std::abs(z) <= 0.5)
        return li2_power_series(z);
    if (z.real() > 0.5) {
        const cplx w = 1.0 - z;
        return pi * pi / 6.0 - std::log(z) * std::log(w) - li2_bernoulli(w);
    }
    return li2_bernoulli(z);
}

} // namespace

double gamma_real(double x)
{
    if (!(x > 0.0)) {
        std::ostringstream os;
        os << "gamma_real: argument must be positive, got " << x;
        throw domain_error(os.str());
    }
    if (x < 0.5)
        return gamma_real(x + 1.0) / x;
    const double xm = x - 1.0;
    double acc = lanczos_coeffs[0];
    for (std::size_t i = 1; i < lanczos_coeffs.size(); ++i)
        acc += lanczos_coeffs[i] / (xm + double(i));
    const double t = xm + 7.5;
    return std::sqrt(2.0 * pi) * std::pow(t, xm + 0.5) * std::exp(-t) * acc;
}

PFQResult pfq(const PFQParams& params)
{
    const double az = std::abs(params.z);
    for (double b : params.bottom) {
        if (is_nonpositive_integer(b))
            throw domain_error("pfq: denominator parameter is a nonpositive integer");
    }

    bool terminating = false;
    for (double a : params.top)
        terminating = terminating || is_nonpositive_integer(a);

    const double excess = std::accumulate(params.bottom.begin(), params.bottom.end(), 0.0) -
                          std::accumulate(params.top.begin(), params.top.end(), 0.0);
    const bool on_circle = std::abs(az - 1.0) <= 1e-14;

    if (!terminating) {
        if (az > 1.0 && !on_circle) {
            std::ostringstream os;
            os << "pfq: |z| = " << az << " > 1, series diverges";
            throw divergence_error(os.str());
        }
        if (on_circle && !(excess > 0.0)) {
            throw domain_error("pfq: |z| = 1 requires Re(sum bottom - sum top) > 0");
        }
    }

    CompensatedSum acc;
    cplx term = 1.0;
    int small_run = 0;
    double tail = 0.0;
    const double tol = params.tol;

    for (long n = 0; n < params.max_terms; ++n) {
        acc += term;

        cplx ratio = params.z / double(n + 1);
        for (double a : params.top)
            ratio *= (a + double(n));
        for (double b : params.bottom)
            ratio /= (b + double(n));
        const cplx next = term * ratio;

        if (next == 0.0) {
            return {acc.value(), 0.0, n + 1};
        }

        const double scale = std::max(1.0, std::abs(acc.value()));
        const double r = std::abs(ratio);
        if (std::abs(term) < tol * scale)
            ++small_run;
        else
            small_run = 0;

        if (on_circle) {
            tail = std::abs(next) * double(n + 1) / excess;
        } else {
            const double r_eff = std::max(r, az);
            tail = r_eff < 1.0 ? std::abs(next) / (1.0 - r_eff)
                               : std::numeric_limits<double>::infinity();
        }

        if (small_run >= 3 && tail <= tol * scale)
            return {acc.value(), tail, n + 1};

        term = next;
    }

    std::ostringstream os;
    os << "pfq: no convergence after " << params.max_terms << " terms (tail estimate " << tail
       << ")";
    throw convergence_error(os.str());
}

cplx hyper(std::vector<double> top, std::vector<double> bottom, cplx z, double tol)
{
    PFQParams p;
    p.top = std::move(top);
    p.bottom = std::move(bottom);
    p.z = z;
    p.tol = tol;
    return pfq(p).value;
}

double agm(double a, double b)
{
    for (int i = 0; i < 64; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 4.0 * eps * a)
            break;
    }
    return 0.5 * (a + b);
}

double ellK(double k)
{
    if (!(k >= 0.0) || !(k < 1.0)) {
        std::ostringstream os;
        os << "ellK: modulus must satisfy 0 <= k < 1, got " << k;
        throw domain_error(os.str());
    }
    return pi / (2.0 * agm(1.0, std::sqrt((1.0 - k) * (1.0 + k))));
}

double ellK_param(double m)
{
    if (!(m < 1.0))
        throw domain_error("ellK_param: parameter must satisfy m < 1");
    return pi / (2.0 * agm(1.0, std::sqrt(1.0 - m)));
}

cplx li2(cplx z)
{
    if (z == 0.0)
        return 0.0;
    if (z == 1.0)
        return pi * pi / 6.0;
    if (std::abs(z) > 1.0) {
        const cplx l = std::log(-z);
        return -pi * pi / 6.0 - 0.5 * l * l - li2_unit_disk(1.0 / z);
    }
    return li2_unit_disk(z);
}

double bloch_wigner(cplx z)
{
    if (z.imag() == 0.0)
        return 0.0;
    // D(1/z) = -D(z) keeps evaluation inside the closed unit disk, away
    // from the cut of Li2 on [1, inf).
    if (std::abs(z) > 1.0)
        return -bloch_wigner(1.0 / z);
    return li2_unit_disk(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

double exp_integral_E1(double x)
{
    if (!(x > 0.0)) {
        std::ostringstream os;
        os << "exp_integral_E1: argument must be positive, got " << x;
        throw domain_error(os.str());
    }
    if (x <= 1.0) {
        // E1(x) = -gamma - log x - sum_{k>=1} (-x)^k / (k k!)
        double sum = 0.0;
        double term = 1.0;
        for (int k = 1; k < 100; ++k) {
            term *= -x / double(k);
            const double t = term / double(k);
            sum += t;
            if (std::abs(t) < eps * std::abs(sum))
                break;
        }
        return -euler_gamma - std::log(x) - sum;
    }
    // Modified Lentz on the continued fraction
    // E1(x) = e^{-x} / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -double(i) * double(i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < eps)
            break;
    }
    return h * std::exp(-x);
}

double trigamma(double x)
{
    if (!(x > 0.0))
        throw domain_error("trigamma: argument must be positive");
    double acc = 0.0;
    while (x < 20.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double ix = 1.0 / x;
    const double ix2 = ix * ix;
    // 1/x + 1/(2x^2) + sum B_{2k} / x^{2k+1}
    const double series =
        ix + 0.5 * ix2 +
        ix * ix2 *
            (1.0 / 6.0 +
             ix2 * (-1.0 / 30.0 + ix2 * (1.0 / 42.0 + ix2 * (-1.0 / 30.0 + ix2 * (5.0 / 66.0)))));
    return acc + series;
}

double dirichlet_L_chi3_at2()
{
    return (trigamma(1.0 / 3.0) - trigamma(2.0 / 3.0)) / 9.0;
}

double dirichlet_Lprime_chi3()
{
    return 3.0 * std::sqrt(3.0) / (4.0 * pi) * dirichlet_L_chi3_at2();
}

} // namespace mahler::specfun
