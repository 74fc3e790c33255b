// elliptic.hpp
//
// Elliptic curves over Q in long Weierstrass form
//     y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6,
// with L-series coefficients from point counting and L'(E, 0) from the
// completed L-function. The conductor is supplied by the curve table.

#ifndef MAHLER_ELLIPTIC_HPP
#define MAHLER_ELLIPTIC_HPP

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mahler::elliptic {

using rational = boost::multiprecision::cpp_rational;
using cplx = std::complex<double>;

struct EllCurveQ {
    std::string label;
    std::optional<long long> k;  // alpha^3 for family members
    std::array<long long, 5> a{};  // a1, a2, a3, a4, a6
    long long N = 0;
    int eps = 0;  // +1, -1, or 0 when unknown
    std::optional<rational> expected_r;

    long long b2 = 0, b4 = 0, b6 = 0, b8 = 0;
    long long c4 = 0, c6 = 0;
    long long disc = 0;
    rational j;
};

// Fills the derived invariants; throws domain_error on a singular model.
EllCurveQ make_curve(std::string label, const std::array<long long, 5>& a, long long N,
                     int eps = 0, std::optional<long long> k = std::nullopt,
                     std::optional<rational> expected_r = std::nullopt);

// One record: label, k|-, a1, a2, a3, a4, a6, N, eps|?, r_num|-, r_den|-
EllCurveQ parse_curve_record(const std::string& line);

// Skips blank lines and lines starting with '#'.
std::vector<EllCurveQ> load_curve_table(const std::string& path);

const EllCurveQ& find_curve(const std::vector<EllCurveQ>& table, const std::string& label);
const EllCurveQ* find_family_curve(const std::vector<EllCurveQ>& table, long long k);

// j of y^2 + alpha xy + y = x^3 as a function of k = alpha^3.
rational family_j(const rational& k);

// Family members have alpha = k^{1/3} in (-1, 3) exactly when -1 < k < 27;
// those rows relate n~ rather than n to L'.
bool uses_n_tilde(long long k);

// a_p by counting points mod p (nonsingular points at bad primes).
long long ap_count(const EllCurveQ& E, long long p);

// #E(F_p) including infinity by brute projective enumeration; independent
// of ap_count, for cross-checks at good primes.
long long count_points_projective(const EllCurveQ& E, long long p);

struct CoeffSeries {
    long n_max = 0;
    std::vector<long long> a;  // a[0] unused, a[1] = 1
};

CoeffSeries an_coeffs(const EllCurveQ& E, long n_max);

struct RootNumberResult {
    int eps;
    double residual_plus;   // |F(1/y0) - y0^2 F(y0)|
    double residual_minus;  // |F(1/y0) + y0^2 F(y0)|
};

RootNumberResult root_number_detail(const EllCurveQ& E, double y0 = 1.5);

// Sets E.eps and returns it.
int root_number(EllCurveQ& E, double y0 = 1.5);

struct LValues {
    double Q = 0.0;
    double Lambda2 = 0.0;
    double L2 = 0.0;
    double Lprime0 = 0.0;
    long n_used = 0;
    double tail_bound = 0.0;
};

inline constexpr long l_series_cap = 100000;

// Terms needed for the crude tail bound to drop below tol.
long l_series_terms(long long N, double tol);

LValues l_values(const EllCurveQ& E, double tol = 1e-13);

// Same sum with an explicit truncation (for self-consistency checks).
LValues l_values_truncated(const EllCurveQ& E, const CoeffSeries& c, long n_max);

struct PeriodLattice {
    double omega_plus;   // least positive real period
    cplx omega_minus;    // purely imaginary, Im > 0
    cplx tau;            // lattice ratio in the upper half-plane
};

// Roots of 4x^3 + b2 x^2 + 2 b4 x + b6, real ones first in decreasing order.
std::array<cplx, 3> two_torsion_roots(const EllCurveQ& E);

PeriodLattice agm_periods(const EllCurveQ& E);

// Change of coordinates x = x' + r, y = y' + s x' + t (u = 1).
EllCurveQ translate(const EllCurveQ& E, long long r, long long s, long long t);

} // namespace mahler::elliptic

#endif
