// elliptic.cpp

#include "mahler/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mahler/errors.hpp"
#include "mahler/specfun.hpp"

namespace mahler::elliptic {

using boost::multiprecision::cpp_int;
using specfun::pi;

namespace {

long long mod(long long v, long long p)
{
    const long long r = v % p;
    return r < 0 ? r + p : r;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& field, const char* what)
{
    try {
        std::size_t used = 0;
        const long long v = std::stoll(field, &used);
        if (used != field.size())
            throw schema_error("");
        return v;
    } catch (const std::exception&) {
        throw schema_error(std::string("curve table: bad integer for ") + what + ": '" + field + "'");
    }
}

// F(x, y) = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6 mod p, and its
// partials, for the nonsingular-point count at bad primes.
struct ModCurve {
    long long p, a1, a2, a3, a4, a6;

    explicit ModCurve(const EllCurveQ& E, long long p_)
        : p(p_), a1(mod(E.a[0], p_)), a2(mod(E.a[1], p_)), a3(mod(E.a[2], p_)),
          a4(mod(E.a[3], p_)), a6(mod(E.a[4], p_))
    {
    }

    long long f(long long x, long long y) const
    {
        const long long lhs = (y * y + a1 * x % p * y + a3 * y) % p;
        const long long rhs = ((x * x % p * x) + a2 * x % p * x + a4 * x + a6) % p;
        return mod(lhs - rhs, p);
    }
    long long fx(long long x, long long y) const
    {
        return mod(a1 * y - 3 * x % p * x - 2 * a2 * x - a4, p);
    }
    long long fy(long long x, long long y) const { return mod(2 * y + a1 * x + a3, p); }
};

std::vector<int> smallest_prime_factors(long n)
{
    std::vector<int> spf(n + 1, 0);
    for (long i = 2; i <= n; ++i) {
        if (spf[i] != 0)
            continue;
        for (long j = i; j <= n; j += i)
            if (spf[j] == 0)
                spf[j] = static_cast<int>(i);
    }
    return spf;
}

} // namespace

EllCurveQ make_curve(std::string label, const std::array<long long, 5>& a, long long N, int eps,
                     std::optional<long long> k, std::optional<rational> expected_r)
{
    EllCurveQ E;
    E.label = std::move(label);
    E.a = a;
    E.N = N;
    E.eps = eps;
    E.k = k;
    E.expected_r = std::move(expected_r);

    const cpp_int a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
    const cpp_int b2 = a1 * a1 + 4 * a2;
    const cpp_int b4 = 2 * a4 + a1 * a3;
    const cpp_int b6 = a3 * a3 + 4 * a6;
    const cpp_int b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    const cpp_int c4 = b2 * b2 - 24 * b4;
    const cpp_int c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    const cpp_int disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc == 0)
        throw domain_error("make_curve: singular model (discriminant 0) for " + E.label);

    E.b2 = b2.convert_to<long long>();
    E.b4 = b4.convert_to<long long>();
    E.b6 = b6.convert_to<long long>();
    E.b8 = b8.convert_to<long long>();
    E.c4 = c4.convert_to<long long>();
    E.c6 = c6.convert_to<long long>();
    E.disc = disc.convert_to<long long>();
    E.j = rational(cpp_int(c4 * c4 * c4)) / rational(disc);
    return E;
}

EllCurveQ parse_curve_record(const std::string& line)
{
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ','))
        fields.push_back(trim(f));
    if (fields.size() != 11) {
        std::ostringstream os;
        os << "curve table: expected 11 fields, got " << fields.size() << " in '" << line << "'";
        throw schema_error(os.str());
    }
    if (fields[0].empty())
        throw schema_error("curve table: empty label");

    std::optional<long long> k;
    if (fields[1] != "-")
        k = parse_int(fields[1], "k");
    std::array<long long, 5> a{};
    for (int i = 0; i < 5; ++i)
        a[i] = parse_int(fields[2 + i], "a-invariant");
    const long long N = parse_int(fields[7], "N");
    if (N <= 0)
        throw schema_error("curve table: conductor must be positive");
    int eps = 0;
    if (fields[8] != "?") {
        const long long e = parse_int(fields[8], "eps");
        if (e != 1 && e != -1)
            throw schema_error("curve table: eps must be +1, -1 or ?");
        eps = static_cast<int>(e);
    }
    std::optional<rational> r;
    if (fields[9] != "-" || fields[10] != "-") {
        const long long num = parse_int(fields[9], "r_num");
        const long long den = parse_int(fields[10], "r_den");
        if (den <= 0)
            throw schema_error("curve table: r_den must be positive");
        r = rational(num, den);
    }
    return make_curve(fields[0], a, N, eps, k, r);
}

std::vector<EllCurveQ> load_curve_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open curve table " + path);
    std::vector<EllCurveQ> out;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        out.push_back(parse_curve_record(t));
    }
    return out;
}

const EllCurveQ& find_curve(const std::vector<EllCurveQ>& table, const std::string& label)
{
    for (const auto& E : table)
        if (E.label == label)
            return E;
    throw std::out_of_range("curve table has no entry '" + label + "'");
}

const EllCurveQ* find_family_curve(const std::vector<EllCurveQ>& table, long long k)
{
    for (const auto& E : table)
        if (E.k && *E.k == k)
            return &E;
    return nullptr;
}

rational family_j(const rational& k)
{
    if (k == 27)
        throw domain_error("family_j: k = 27 gives a singular curve");
    const rational t = k - 24;
    return k * t * t * t / (k - 27);
}

bool uses_n_tilde(long long k)
{
    return k > -1 && k < 27;
}

long long count_points_projective(const EllCurveQ& E, long long p)
{
    const ModCurve C(E, p);
    long long count = 1;  // [0 : 1 : 0]
    for (long long x = 0; x < p; ++x)
        for (long long y = 0; y < p; ++y)
            if (C.f(x, y) == 0)
                ++count;
    return count;
}

long long ap_count(const EllCurveQ& E, long long p)
{
    const bool bad = E.N % p == 0;
    if (!bad && mod(E.disc, p) == 0) {
        std::ostringstream os;
        os << "ap_count: model for " << E.label << " is not minimal at p = " << p;
        throw domain_error(os.str());
    }
    if (bad || p <= 3) {
        const ModCurve C(E, p);
        long long affine = 0;
        for (long long x = 0; x < p; ++x)
            for (long long y = 0; y < p; ++y)
                if (C.f(x, y) == 0 && !(bad && C.fx(x, y) == 0 && C.fy(x, y) == 0))
                    ++affine;
        // The point at infinity is always nonsingular.
        return bad ? p - (affine + 1) : p - affine;
    }
    // Odd good p: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
    std::vector<signed char> chi(p, -1);
    chi[0] = 0;
    for (long long t = 1; t < p; ++t)
        chi[t * t % p] = 1;
    const long long b2 = mod(E.b2, p), b4 = mod(2 * E.b4, p), b6 = mod(E.b6, p);
    long long s = 0;
    for (long long x = 0; x < p; ++x) {
        const long long v = (((4 * x + b2) % p * x + b4) % p * x + b6) % p;
        s += chi[v];
    }
    return -s;
}

CoeffSeries an_coeffs(const EllCurveQ& E, long n_max)
{
    if (n_max < 1)
        throw domain_error("an_coeffs: n_max must be positive");
    CoeffSeries c;
    c.n_max = n_max;
    c.a.assign(n_max + 1, 0);
    c.a[1] = 1;
    const auto spf = smallest_prime_factors(n_max);
    for (long n = 2; n <= n_max; ++n) {
        const long p = spf[n];
        long m = n, pk = 1;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        if (m > 1) {
            c.a[n] = c.a[m] * c.a[pk];
        } else if (pk == p) {
            c.a[n] = ap_count(E, p);
        } else {
            const long long good = E.N % p == 0 ? 0 : 1;
            c.a[n] = c.a[p] * c.a[n / p] - good * p * c.a[n / p / p];
        }
    }
    return c;
}

namespace {

double theta_sum(const CoeffSeries& c, long long N, double y)
{
    const double step = std::exp(-2.0 * pi * y / std::sqrt(double(N)));
    double w = 1.0, s = 0.0;
    for (long n = 1; n <= c.n_max; ++n) {
        w *= step;
        s += double(c.a[n]) * w;
    }
    return s;
}

} // namespace

RootNumberResult root_number_detail(const EllCurveQ& E, double y0)
{
    if (!(y0 > 0.0))
        throw domain_error("root_number: y0 must be positive");
    const double y = std::min(y0, 1.0 / y0);
    // |a_n| <= 2n; stop once 2n e^{-2 pi n y / sqrt N} is far below 1e-16.
    const double rate = 2.0 * pi * y / std::sqrt(double(E.N));
    long n_max = static_cast<long>(std::ceil(50.0 / rate)) + 10;
    if (n_max > l_series_cap)
        throw convergence_error("root_number: conductor too large for the coefficient cap");
    const auto c = an_coeffs(E, n_max);
    const double lhs = theta_sum(c, E.N, 1.0 / y0);
    const double rhs = y0 * y0 * theta_sum(c, E.N, y0);
    RootNumberResult r{0, std::abs(lhs - rhs), std::abs(lhs + rhs)};
    const double scale = std::max(1.0, std::abs(lhs));
    const double best = std::min(r.residual_plus, r.residual_minus);
    if (!(best <= 1e-6 * scale)) {
        std::ostringstream os;
        os << "root_number: neither sign fits for " << E.label << " (residuals " << r.residual_plus
           << ", " << r.residual_minus << "); conductor or coefficients wrong";
        throw numerical_error(os.str());
    }
    r.eps = r.residual_plus <= r.residual_minus ? 1 : -1;
    return r;
}

int root_number(EllCurveQ& E, double y0)
{
    E.eps = root_number_detail(E, y0).eps;
    return E.eps;
}

long l_series_terms(long long N, double tol)
{
    const double Q = 2.0 * pi / std::sqrt(double(N));
    const double geo = 1.0 / (1.0 - std::exp(-Q));
    for (long M = 1; M <= l_series_cap; ++M) {
        const double bound =
            (4.0 / Q + 2.0 / (Q * Q * double(M + 1))) * std::exp(-Q * double(M + 1)) * geo;
        if (bound < tol)
            return M;
    }
    std::ostringstream os;
    os << "l_values: tail bound above " << tol << " at the cap of " << l_series_cap << " terms";
    throw convergence_error(os.str());
}

LValues l_values_truncated(const EllCurveQ& E, const CoeffSeries& c, long n_max)
{
    if (E.eps == 0)
        throw domain_error("l_values: root number unknown for " + E.label);
    if (n_max > c.n_max)
        throw domain_error("l_values: not enough coefficients");
    LValues v;
    v.Q = 2.0 * pi / std::sqrt(double(E.N));
    const double Q = v.Q;
    double s = 0.0;
    for (long n = 1; n <= n_max; ++n) {
        if (c.a[n] == 0)
            continue;
        const double x = Q * double(n);
        const double bracket = std::exp(-x) * (x + 1.0) / (x * x) + E.eps * specfun::exp_integral_E1(x);
        s += double(c.a[n]) * bracket;
    }
    v.Lambda2 = s;
    v.L2 = Q * Q * s;
    v.Lprime0 = E.eps * s;
    v.n_used = n_max;
    const double geo = 1.0 / (1.0 - std::exp(-Q));
    v.tail_bound = (4.0 / Q + 2.0 / (Q * Q * double(n_max + 1))) * std::exp(-Q * double(n_max + 1)) * geo;
    return v;
}

LValues l_values(const EllCurveQ& E, double tol)
{
    if (!(tol >= 1e-13))
        throw domain_error("l_values: tol below 1e-13 is not meaningful in double precision");
    const long M = l_series_terms(E.N, tol);
    return l_values_truncated(E, an_coeffs(E, M), M);
}

std::array<cplx, 3> two_torsion_roots(const EllCurveQ& E)
{
    const double b2 = double(E.b2), b4 = double(E.b4), b6 = double(E.b6);
    auto g = [&](double x) { return ((4.0 * x + b2) * x + 2.0 * b4) * x + b6; };
    auto dg = [&](double x) { return (12.0 * x + 2.0 * b2) * x + 2.0 * b4; };

    // A real root by bisection inside the Cauchy bound (g(-R) < 0 < g(R)).
    const double R = 1.0 + std::max({std::abs(b2) / 4.0, std::abs(b4) / 2.0, std::abs(b6) / 4.0});
    double lo = -R, hi = R;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
    }
    // Newton polish, then deflate.
    double r = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) {
        const double d = dg(r);
        if (d != 0.0)
            r -= g(r) / d;
    }
    // 4x^3 + b2 x^2 + 2 b4 x + b6 = (x - r)(4x^2 + B x + C)
    const double B = b2 + 4.0 * r;
    const double C = 2.0 * b4 + r * B;
    const cplx disc = std::sqrt(cplx(B * B - 16.0 * C, 0.0));
    const cplx q = -0.5 * (B + (B >= 0.0 ? disc : -disc));
    cplx s1 = q / 4.0, s2 = C / q;
    if (q == 0.0)
        s1 = s2 = 0.0;

    auto polish = [&](cplx z) {
        auto gc = [&](cplx x) { return ((4.0 * x + b2) * x + 2.0 * b4) * x + b6; };
        auto dgc = [&](cplx x) { return (12.0 * x + 2.0 * b2) * x + 2.0 * b4; };
        for (int i = 0; i < 3; ++i) {
            const cplx d = dgc(z);
            if (d != 0.0)
                z -= gc(z) / d;
        }
        return z;
    };
    s1 = polish(s1);
    s2 = polish(s2);

    if (E.disc > 0) {
        std::array<double, 3> e{r, s1.real(), s2.real()};
        std::sort(e.begin(), e.end(), std::greater<>());
        return {cplx(e[0]), cplx(e[1]), cplx(e[2])};
    }
    const cplx up = s1.imag() >= 0.0 ? s1 : s2;
    return {cplx(r), cplx(up.real(), std::abs(up.imag())), cplx(up.real(), -std::abs(up.imag()))};
}

PeriodLattice agm_periods(const EllCurveQ& E)
{
    const auto e = two_torsion_roots(E);
    PeriodLattice L{};
    if (E.disc > 0) {
        const double e1 = e[0].real(), e2 = e[1].real(), e3 = e[2].real();
        L.omega_plus = pi / specfun::agm(std::sqrt(e1 - e3), std::sqrt(e1 - e2));
        L.omega_minus = cplx(0.0, pi / specfun::agm(std::sqrt(e1 - e3), std::sqrt(e2 - e3)));
        L.tau = L.omega_minus / L.omega_plus;
    } else {
        const cplx z = std::sqrt(e[0] - e[1]);
        const double az = std::abs(z);
        L.omega_plus = pi / specfun::agm(az, std::abs(z.real()));
        L.omega_minus = cplx(0.0, pi / specfun::agm(az, std::abs(z.imag())));
        // Non-rectangular lattice generated by omega_plus and
        // (omega_plus + omega_minus) / 2.
        L.tau = 0.5 + L.omega_minus / (2.0 * L.omega_plus);
    }
    return L;
}

EllCurveQ translate(const EllCurveQ& E, long long r, long long s, long long t)
{
    const long long a1 = E.a[0], a2 = E.a[1], a3 = E.a[2], a4 = E.a[3], a6 = E.a[4];
    std::array<long long, 5> b{};
    b[0] = a1 + 2 * s;
    b[1] = a2 - s * a1 + 3 * r - s * s;
    b[2] = a3 + r * a1 + 2 * t;
    b[3] = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    b[4] = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    return make_curve(E.label, b, E.N, E.eps, E.k, E.expected_r);
}

} // namespace mahler::elliptic
