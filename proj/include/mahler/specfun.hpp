// specfun.hpp
//
// Scalar special functions in double precision: Gamma for positive reals,
// generalized hypergeometric series, the complete elliptic integral of the
// first kind via the AGM, the dilogarithm and Bloch-Wigner function, E1 and
// the Dirichlet L-value L'(chi_{-3}, -1).

#ifndef MAHLER_SPECFUN_HPP
#define MAHLER_SPECFUN_HPP

#include <complex>
#include <vector>

namespace mahler::specfun {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

double gamma_real(double x);

// Parameters of pFq(top; bottom; z).
struct PFQParams {
    std::vector<double> top;
    std::vector<double> bottom;
    cplx z{0.0, 0.0};
    double tol = 1e-15;
    long max_terms = 20'000'000;
};

struct PFQResult {
    cplx value;
    double error;  // truncation estimate, <= tol * max(1, |value|)
    long terms;
};

// Direct partial summation. Refuses |z| > 1; on |z| = 1 requires
// Re(sum bottom - sum top) > 0 and uses the algebraic tail estimate.
PFQResult pfq(const PFQParams& params);

// Convenience wrapper returning only the value.
cplx hyper(std::vector<double> top, std::vector<double> bottom, cplx z, double tol = 1e-15);

double agm(double a, double b);

// K(k) = pi / (2 AGM(1, sqrt(1-k^2))) for 0 <= k < 1.
double ellK(double k);

// K in parameter form, K(m) = int_0^1 dt / sqrt((1-t^2)(1-m t^2)), m < 1.
// Negative m (imaginary modulus) is allowed.
double ellK_param(double m);

cplx li2(cplx z);

// D(z) = Im Li2(z) + arg(1-z) log|z|.
double bloch_wigner(cplx z);

double exp_integral_E1(double x);

// Trigamma psi'(x) for x > 0.
double trigamma(double x);

// L(chi_{-3}, 2) = (psi'(1/3) - psi'(2/3)) / 9.
double dirichlet_L_chi3_at2();

// L'(chi_{-3}, -1) = 3 sqrt(3) / (4 pi) * L(chi_{-3}, 2).
double dirichlet_Lprime_chi3();

} // namespace mahler::specfun

#endif
