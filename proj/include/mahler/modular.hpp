// modular.hpp
//
// q-series on the upper half-plane: Dedekind eta, the eta quotient u(tau),
// Siegel units, the Eisenstein series e_{a,b} and products f_{a,b;c}, the
// modular-unit parametrization of the conductor 19 curve, and the
// elliptic dilogarithm sum over zeta_3 q^n.
//
// Throughout q = exp(2 pi i tau) and q^e for rational e means
// exp(2 pi i tau e).

#ifndef MAHLER_MODULAR_HPP
#define MAHLER_MODULAR_HPP

#include <complex>
#include <vector>

#include <boost/rational.hpp>

namespace mahler::modular {

using cplx = std::complex<double>;
using rational = boost::rational<long long>;

// Sum_{m=0}^{n_max} c[m] q^{e0 + m}.
struct QExpansion {
    rational e0{0};
    std::vector<cplx> c;

    int n_max() const { return static_cast<int>(c.size()) - 1; }
    cplx operator()(cplx tau) const;
};

QExpansion operator+(const QExpansion& a, const QExpansion& b);
QExpansion operator-(const QExpansion& a, const QExpansion& b);
QExpansion operator*(const QExpansion& a, const QExpansion& b);
QExpansion operator*(cplx s, const QExpansion& a);
// 1/a for a with nonzero leading coefficient.
QExpansion inverse(const QExpansion& a);

cplx q_of(cplx tau);

// Factors (1 - q^n) needed so that |q|^n drops below tail; 0 terms means
// pick automatically.
int product_terms(cplx tau, double tail = 1e-17);

cplx eta(cplx tau, int terms = 0);
QExpansion eta_qexp(int n_max);

// E4^3 / eta^24.
cplx j_invariant(cplx tau);

// 3 (1 + 27 eta^12(3 tau) / eta^12(tau))^{1/3}, real cube root; requires
// the bracket to be real (as on tau = 1/2 + it).
double u_tau(cplx tau, int terms = 0);

struct ModularPoint {
    cplx tau;
    cplx q;
    double u;
};

inline constexpr double invert_u_tmin = 0.1;
inline constexpr double invert_u_tmax = 5.0;

// Solves u(1/2 + it) = alpha for t in (0.1, 5).
ModularPoint invert_u(double alpha, double tol = 1e-12);

// B2(x) = {x}^2 - {x} + 1/6.
rational bernoulli_B2(rational x);

// Leading exponent N B2(a/N) / 2 of g_a.
rational siegel_exponent(int N, int a);

cplx siegel_g(int N, int a, cplx tau, int terms = 0);
// Same value via exp(sum of logs): log(1 - q^n) = -sum_k q^{nk}/k.
cplx siegel_g_via_log(int N, int a, cplx tau, int terms = 0);
QExpansion siegel_g_qexp(int N, int a, int n_max);

struct XY {
    cplx x;
    cplx y;
};

// x = -g1 g7 g8 / (g2 g3 g5), y = g1 g7 g8 / (g4 g6 g9) for N = 19.
XY param_xy_19(cplx tau, int terms = 0);
QExpansion param_x19_qexp(int n_max);
QExpansion param_y19_qexp(int n_max);

QExpansion eis_e(int N, int a, int b, int n_max);
QExpansion f_abc(int N, int a, int b, int c, int n_max);

struct FabcCandidate {
    int a, b, c;
    cplx scale;       // q-coefficients = scale * a_n for 1 <= n <= n_max
    double mismatch;  // max |c_n - scale a_n|
};

// Triples 1 <= a, b, c < N (with N not dividing a c or b c) whose f_{a,b;c}
// has non-constant part proportional to the given newform coefficients
// an[1..n_max].
std::vector<FabcCandidate> find_f_abc_newform(int N, const std::vector<long long>& an, int n_max,
                                              double tol = 1e-9);

struct SpanCheck {
    int rank;                // dimension spanned by the non-constant parts
    double relative_residual;  // |newform - projection| / |newform|
};

// Whether the newform lies in the span of all f_{a,b;c} (non-constant
// parts, q^1..q^n_max). For N = 19 no single triple is proportional to the
// newform, but a combination is.
SpanCheck newform_span_check(int N, const std::vector<long long>& an, int n_max);

struct DilogSum {
    double value;
    int terms;  // n = 1..terms used on each side
};

// sum_{n in Z} D(zeta_3 q^n) for real 0 < |q| < 1.
DilogSum elliptic_dilog_sum(double q, double tol = 1e-15);

} // namespace mahler::modular

#endif
