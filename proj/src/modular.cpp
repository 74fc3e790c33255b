// modular.cpp

#include "mahler/modular.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mahler/errors.hpp"
#include "mahler/specfun.hpp"

namespace mahler::modular {

using specfun::pi;

namespace {

constexpr cplx I{0.0, 1.0};
constexpr int max_terms = 100000;

cplx qpow(cplx tau, rational e)
{
    return std::exp(2.0 * pi * I * tau * (double(e.numerator()) / double(e.denominator())));
}

void require_upper(cplx tau, const char* who)
{
    if (!(tau.imag() > 0.0)) {
        std::ostringstream os;
        os << who << ": tau must lie in the upper half-plane, got " << tau;
        throw domain_error(os.str());
    }
}

// prod_{n=1}^{terms} (1 - q^n)
cplx euler_product(cplx q, int terms)
{
    cplx p = 1.0, qn = 1.0;
    for (int n = 1; n <= terms; ++n) {
        qn *= q;
        p *= 1.0 - qn;
    }
    return p;
}

int residue(int a, int N)
{
    const int r = a % N;
    return r < 0 ? r + N : r;
}

} // namespace

cplx QExpansion::operator()(cplx tau) const
{
    const cplx q = q_of(tau);
    cplx s = 0.0;
    for (int m = n_max(); m >= 0; --m)
        s = s * q + c[m];
    return qpow(tau, e0) * s;
}

QExpansion operator+(const QExpansion& a, const QExpansion& b)
{
    const rational shift = b.e0 - a.e0;
    if (shift.denominator() != 1)
        throw domain_error("QExpansion: exponents differ by a non-integer");
    const QExpansion& lo = shift >= 0 ? a : b;
    const QExpansion& hi = shift >= 0 ? b : a;
    const int d = static_cast<int>(shift >= 0 ? shift.numerator() : -shift.numerator());
    const int n = std::min(lo.n_max(), hi.n_max() + d);
    QExpansion r;
    r.e0 = lo.e0;
    r.c.assign(n + 1, 0.0);
    for (int m = 0; m <= n; ++m) {
        r.c[m] = lo.c[m];
        if (m >= d)
            r.c[m] += hi.c[m - d];
    }
    return r;
}

QExpansion operator*(cplx s, const QExpansion& a)
{
    QExpansion r = a;
    for (auto& v : r.c)
        v *= s;
    return r;
}

QExpansion operator-(const QExpansion& a, const QExpansion& b)
{
    return a + (-1.0) * b;
}

QExpansion operator*(const QExpansion& a, const QExpansion& b)
{
    const int n = std::min(a.n_max(), b.n_max());
    QExpansion r;
    r.e0 = a.e0 + b.e0;
    r.c.assign(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        if (a.c[i] == 0.0)
            continue;
        for (int j = 0; i + j <= n; ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}

QExpansion inverse(const QExpansion& a)
{
    if (a.c.empty() || a.c[0] == 0.0)
        throw domain_error("QExpansion: inverse needs a nonzero leading coefficient");
    const int n = a.n_max();
    QExpansion r;
    r.e0 = -a.e0;
    r.c.assign(n + 1, 0.0);
    r.c[0] = 1.0 / a.c[0];
    for (int m = 1; m <= n; ++m) {
        cplx s = 0.0;
        for (int k = 1; k <= m; ++k)
            s += a.c[k] * r.c[m - k];
        r.c[m] = -s / a.c[0];
    }
    return r;
}

cplx q_of(cplx tau)
{
    return std::exp(2.0 * pi * I * tau);
}

int product_terms(cplx tau, double tail)
{
    require_upper(tau, "product_terms");
    const double lq = -2.0 * pi * tau.imag();  // log|q|
    const double n = std::ceil(std::log(tail) / lq) + 1.0;
    if (n > max_terms)
        throw convergence_error("product_terms: Im tau too small for the q-product");
    return std::max(1, static_cast<int>(n));
}

cplx eta(cplx tau, int terms)
{
    require_upper(tau, "eta");
    if (terms <= 0)
        terms = product_terms(tau);
    return qpow(tau, rational(1, 24)) * euler_product(q_of(tau), terms);
}

QExpansion eta_qexp(int n_max)
{
    QExpansion r;
    r.e0 = rational(1, 24);
    r.c.assign(n_max + 1, 0.0);
    r.c[0] = 1.0;
    for (int n = 1; n <= n_max; ++n)
        for (int m = n_max; m >= n; --m)
            r.c[m] -= r.c[m - n];
    return r;
}

cplx j_invariant(cplx tau)
{
    require_upper(tau, "j_invariant");
    const cplx q = q_of(tau);
    const int terms = product_terms(tau, 1e-20);
    cplx e4 = 0.0, qn = 1.0;
    for (int n = 1; n <= terms + 10; ++n) {
        qn *= q;
        e4 += double(n) * n * n * qn / (1.0 - qn);
    }
    e4 = 1.0 + 240.0 * e4;
    const cplx p = euler_product(q, terms);
    const cplx p2 = p * p, p4 = p2 * p2, p8 = p4 * p4;
    const cplx delta = q * p8 * p8 * p8;
    return e4 * e4 * e4 / delta;
}

double u_tau(cplx tau, int terms)
{
    require_upper(tau, "u_tau");
    if (terms <= 0)
        terms = product_terms(tau);
    const cplx q = q_of(tau);
    // (eta(3 tau)/eta(tau))^12 = q (prod(1 - q^{3n}) / prod(1 - q^n))^12
    const cplx ratio = euler_product(q * q * q, terms) / euler_product(q, terms);
    const cplx r2 = ratio * ratio, r4 = r2 * r2;
    const cplx w = 1.0 + 27.0 * q * r4 * r4 * r4;
    if (std::abs(w.imag()) > 1e-9 * std::max(1.0, std::abs(w))) {
        std::ostringstream os;
        os << "u_tau: 1 + 27 eta^12(3 tau)/eta^12(tau) is not real at tau = " << tau;
        throw domain_error(os.str());
    }
    return 3.0 * std::cbrt(w.real());
}

ModularPoint invert_u(double alpha, double tol)
{
    auto u = [](double t) { return u_tau(cplx(0.5, t)); };
    double lo = invert_u_tmin, hi = invert_u_tmax;
    const double ulo = u(lo), uhi = u(hi);
    if (!(alpha >= ulo && alpha <= uhi)) {
        std::ostringstream os;
        os << "invert_u: alpha = " << alpha << " is outside [" << ulo << ", " << uhi
           << "] attained on tau = 1/2 + it, t in (" << lo << ", " << hi << ")";
        throw domain_error(os.str());
    }
    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double um = u(mid);
        if (std::abs(um - alpha) < tol * 1e-3) {
            lo = hi = mid;
            break;
        }
        (um < alpha ? lo : hi) = mid;
    }
    const cplx tau(0.5, 0.5 * (lo + hi));
    const double ut = u_tau(tau);
    if (std::abs(ut - alpha) > tol)
        throw convergence_error("invert_u: bisection did not reach tolerance");
    // e^{2 pi i (1/2 + it)} = -e^{-2 pi t}, exactly real
    return {tau, cplx(-std::exp(-2.0 * pi * tau.imag()), 0.0), ut};
}

rational bernoulli_B2(rational x)
{
    // fractional part
    const long long fl = x.numerator() >= 0 ? x.numerator() / x.denominator()
                                            : -((-x.numerator() + x.denominator() - 1) / x.denominator());
    const rational f = x - fl;
    return f * f - f + rational(1, 6);
}

rational siegel_exponent(int N, int a)
{
    return rational(N) * bernoulli_B2(rational(a, N)) / 2;
}

namespace {

void require_unit_index(int N, int a)
{
    if (N <= 1 || a % N == 0) {
        std::ostringstream os;
        os << "siegel_g: need N > 1 and N not dividing a (N = " << N << ", a = " << a << ")";
        throw domain_error(os.str());
    }
}

} // namespace

cplx siegel_g(int N, int a, cplx tau, int terms)
{
    require_unit_index(N, a);
    require_upper(tau, "siegel_g");
    if (terms <= 0)
        terms = product_terms(tau);
    const cplx q = q_of(tau);
    cplx p = 1.0, qn = 1.0;
    for (int n = 1; n <= terms; ++n) {
        qn *= q;
        if (residue(n, N) == residue(a, N))
            p *= 1.0 - qn;
        if (residue(n, N) == residue(-a, N))
            p *= 1.0 - qn;
    }
    return qpow(tau, siegel_exponent(N, a)) * p;
}

cplx siegel_g_via_log(int N, int a, cplx tau, int terms)
{
    require_unit_index(N, a);
    require_upper(tau, "siegel_g_via_log");
    if (terms <= 0)
        terms = product_terms(tau);
    const cplx q = q_of(tau);
    const double aq = std::abs(q);
    cplx lg = 0.0, qn = 1.0;
    for (int n = 1; n <= terms; ++n) {
        qn *= q;
        const int mult = (residue(n, N) == residue(a, N)) + (residue(n, N) == residue(-a, N));
        if (mult == 0)
            continue;
        cplx qnk = qn;
        for (int k = 1; std::pow(aq, double(n) * k) > 1e-20; ++k) {
            lg -= double(mult) * qnk / double(k);
            qnk *= qn;
        }
    }
    return qpow(tau, siegel_exponent(N, a)) * std::exp(lg);
}

QExpansion siegel_g_qexp(int N, int a, int n_max)
{
    require_unit_index(N, a);
    QExpansion r;
    r.e0 = siegel_exponent(N, a);
    r.c.assign(n_max + 1, 0.0);
    r.c[0] = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        const int mult = (residue(n, N) == residue(a, N)) + (residue(n, N) == residue(-a, N));
        for (int t = 0; t < mult; ++t)
            for (int m = n_max; m >= n; --m)
                r.c[m] -= r.c[m - n];
    }
    return r;
}

XY param_xy_19(cplx tau, int terms)
{
    require_upper(tau, "param_xy_19");
    if (terms <= 0)
        terms = product_terms(tau);
    auto g = [&](int a) { return siegel_g(19, a, tau, terms); };
    const cplx num = g(1) * g(7) * g(8);
    return {-num / (g(2) * g(3) * g(5)), num / (g(4) * g(6) * g(9))};
}

QExpansion param_x19_qexp(int n_max)
{
    auto g = [&](int a) { return siegel_g_qexp(19, a, n_max); };
    return (-1.0) * (g(1) * g(7) * g(8) * inverse(g(2) * g(3) * g(5)));
}

QExpansion param_y19_qexp(int n_max)
{
    auto g = [&](int a) { return siegel_g_qexp(19, a, n_max); };
    return g(1) * g(7) * g(8) * inverse(g(4) * g(6) * g(9));
}

QExpansion eis_e(int N, int a, int b, int n_max)
{
    if (N <= 1 || residue(a, N) == 0 || residue(b, N) == 0) {
        std::ostringstream os;
        os << "eis_e: need N not dividing a or b (N = " << N << ", a = " << a << ", b = " << b << ")";
        throw domain_error(os.str());
    }
    std::vector<cplx> zeta(N);
    for (int k = 0; k < N; ++k)
        zeta[k] = std::polar(1.0, 2.0 * pi * k / N);
    auto frac = [&](int k) {
        const cplx z = zeta[residue(k, N)];
        return (1.0 + z) / (1.0 - z);
    };
    QExpansion r;
    r.c.assign(n_max + 1, 0.0);
    r.c[0] = 0.5 * (frac(a) + frac(b));
    for (int m = 1; m <= n_max; ++m)
        for (int n = 1; m * n <= n_max; ++n) {
            const int k = residue(a * m + b * n, N);
            r.c[m * n] += zeta[k] - zeta[residue(-k, N)];
        }
    return r;
}

QExpansion f_abc(int N, int a, int b, int c, int n_max)
{
    if (residue(a * c, N) == 0 || residue(b * c, N) == 0)
        throw domain_error("f_abc: need N not dividing ac or bc");
    return eis_e(N, a, b * c, n_max) * eis_e(N, b, -a * c, n_max) -
           eis_e(N, a, -b * c, n_max) * eis_e(N, b, a * c, n_max);
}

std::vector<FabcCandidate> find_f_abc_newform(int N, const std::vector<long long>& an, int n_max,
                                              double tol)
{
    if (static_cast<int>(an.size()) <= n_max || an[1] != 1)
        throw domain_error("find_f_abc_newform: need normalized coefficients a_1..a_n_max");
    std::vector<FabcCandidate> out;
    for (int a = 1; a < N; ++a)
        for (int b = 1; b < N; ++b)
            for (int c = 1; c < N; ++c) {
                if (residue(a * c, N) == 0 || residue(b * c, N) == 0)
                    continue;
                const auto f = f_abc(N, a, b, c, n_max);
                const cplx scale = f.c[1];
                if (std::abs(scale) < 1e-9)
                    continue;
                double mis = 0.0;
                for (int n = 1; n <= n_max; ++n)
                    mis = std::max(mis, std::abs(f.c[n] - scale * double(an[n])));
                if (mis <= tol * std::abs(scale))
                    out.push_back({a, b, c, scale, mis});
            }
    return out;
}

SpanCheck newform_span_check(int N, const std::vector<long long>& an, int n_max)
{
    if (static_cast<int>(an.size()) <= n_max)
        throw domain_error("newform_span_check: not enough coefficients");
    // Modified Gram-Schmidt on the coefficient vectors q^1..q^n_max.
    std::vector<std::vector<cplx>> basis;
    auto dot = [](const std::vector<cplx>& u, const std::vector<cplx>& v) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            s += std::conj(u[i]) * v[i];
        return s;
    };
    auto reduce = [&](std::vector<cplx>& v) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                const cplx c = dot(b, v);
                for (std::size_t i = 0; i < v.size(); ++i)
                    v[i] -= c * b[i];
            }
    };
    for (int a = 1; a < N; ++a)
        for (int b = 1; b < N; ++b)
            for (int c = 1; c < N; ++c) {
                if (residue(a * c, N) == 0 || residue(b * c, N) == 0)
                    continue;
                const auto f = f_abc(N, a, b, c, n_max);
                std::vector<cplx> v(f.c.begin() + 1, f.c.end());
                const double norm0 = std::sqrt(dot(v, v).real());
                reduce(v);
                const double norm = std::sqrt(dot(v, v).real());
                if (norm > 1e-8 * std::max(1.0, norm0)) {
                    for (auto& x : v)
                        x /= norm;
                    basis.push_back(std::move(v));
                }
            }
    std::vector<cplx> t(n_max);
    for (int n = 1; n <= n_max; ++n)
        t[n - 1] = double(an[n]);
    const double tnorm = std::sqrt(dot(t, t).real());
    reduce(t);
    return {static_cast<int>(basis.size()), std::sqrt(dot(t, t).real()) / tnorm};
}

DilogSum elliptic_dilog_sum(double q, double tol)
{
    if (!(std::abs(q) > 0.0 && std::abs(q) < 1.0))
        throw domain_error("elliptic_dilog_sum: need 0 < |q| < 1");
    const cplx z3 = std::polar(1.0, 2.0 * pi / 3.0);
    // D(zeta_3 q^{-n}) = D(zeta_3 q^n) for real q, so fold n < 0 onto n > 0.
    const double aq = std::abs(q), lq = -std::log(aq);
    double s = specfun::bloch_wigner(z3);
    double qn = 1.0;
    int n = 0;
    while (true) {
        ++n;
        qn *= q;
        s += 2.0 * specfun::bloch_wigner(z3 * qn);
        // |D(z)| <= |z| (1 + |log|z||) for small z; geometric tail
        const double next = std::pow(aq, n + 1);
        const double tail = 2.0 * next * (1.0 + (n + 1) * lq) / ((1.0 - aq) * (1.0 - aq));
        if (tail < tol || n > 100000)
            break;
    }
    return {s, n};
}

} // namespace mahler::modular
