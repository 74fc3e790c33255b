// family.hpp
//
// The nonreciprocal family Q_alpha(x, y) = y^2 + (x^2 - alpha x) y + x.
//
// For |x| = 1 the two roots in y are
//
//     y_pm(x) = -(x^2 - alpha x) (1/2 +- sqrt(1/4 - 1/(x (x - alpha)^2)))
//
// with the principal square root; |y_-| <= 1 <= |y_+| and y_+ y_- = x, so by
// Jensen's formula
//
//     n(alpha) = m(Q_alpha) = (1/pi) int_0^pi log|y_+(e^{i theta})| d theta.
//
// For -1 < alpha < 3 the curve meets the torus at theta in {0, +-c(alpha)},
// c(alpha) = acos((alpha - 1)/2), and the integral splits as n = I + J with
// J the piece over [c, pi]. The modified measure n~ = n - 3J = I - 2J has a
// closed 3F2 form; outside the hypocycloid n itself has a closed 4F3 form.
//
// The module also carries the lemma-level checks used to derive the
// derivative formula (lambda substitution, the symmetric polynomial F_lambda,
// the K-form), the boundary limits of y_pm at the toric points, nested 2D
// quadrature for m(P_alpha) and the g-family, and the S_0 split integral.

#ifndef MAHLER_FAMILY_HPP
#define MAHLER_FAMILY_HPP

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace mahler::family {

using cplx = std::complex<double>;

enum class Region { inside, boundary, outside };

struct AlphaParam {
    double alpha;
    Region region;
};

AlphaParam classify(double alpha);
std::string to_string(Region r);

struct BranchPair {
    cplx x;
    cplx y_plus;
    cplx y_minus;
};

// Q_alpha(x, y).
cplx q_poly(double alpha, cplx x, cplx y);

BranchPair y_branches(double alpha, double theta);

// log|y_+(e^{i theta})| computed as log|x - alpha| + log|1/2 + s|.
double log_abs_y_plus(double alpha, double theta);

// c(alpha) = acos((alpha - 1)/2); requires -1 <= alpha <= 3.
double c_alpha(double alpha);

struct ToricPoint {
    std::string label;
    cplx x;
    cplx y;
};

struct ToricData {
    double c_alpha;
    cplx Y_plus;
    cplx Y_minus;
    std::array<ToricPoint, 6> points;  // P1+, P1-, P2+, P2-, P3+, P3-
};

ToricData toric_points(double alpha);

struct MeasureBreakdown {
    double n = 0.0;
    std::optional<double> I;
    std::optional<double> J;
    std::optional<double> n_tilde;
    double err = 0.0;
};

inline constexpr double default_tol = 1e-13;

MeasureBreakdown n_measure(double alpha, double tol = default_tol);

double j_integral(double alpha, double tol = default_tol);

double n_tilde(double alpha, double tol = default_tol);

// Re(log alpha - (2/alpha^3) 4F3(4/3,5/3,1,1; 2,2,2; 27/alpha^3)) for
// |alpha| >= 3. On |alpha| = 3 the series sits on its circle of convergence:
// alpha = -3 alternates (summed to ~1e-7), alpha = 3 uses Richardson
// extrapolation of the partial sums.
double closed_form_outside(double alpha);

struct HyperClosedForm {
    double s_alpha;
    double thm_prefactor;
    double gamma_const_1;  // 2^{1/3} G(1/6) G(1/3) G(1/2) / (sqrt 3 pi^2)
    double gamma_const_2;  // G(2/3)^3 / (2 pi^2)
};

HyperClosedForm hyper_constants(double alpha);

struct ClosedFormInside {
    double value;  // with s(alpha) = -(1 + 3 sgn alpha)^2 / 64
    // Same bracket times -1/4 for both signs. For alpha < 0 that s
    // is off by a factor 4 against quadrature; this variant is the one that
    // matches (and is analytic through alpha = 0).
    double value_uniform_s;
    // alpha == 0: the expression's limit (0) is returned; n(0) itself is
    // nonzero, so n~ and the closed form only agree as a limit there.
    bool zero_limit;
};

ClosedFormInside closed_form_inside(double alpha);

struct LambdaSub {
    double lambda;
    double alpha;
    double x1;
    cplx x2;
    cplx x3;
    cplx gamma;
};

// p_lambda(x) = x (lambda^2 - x) (x^2 + (4/lambda - lambda^2) x + 4/lambda^2).
cplx p_lambda(double lambda, cplx x);

LambdaSub lambda_data(double lambda);
LambdaSub solve_lambda(double alpha);

struct GdiCheck {
    cplx lhs;
    cplx rhs;
    // +1 if lhs matches rhs, -1 if lhs matches -rhs.
    int sign;
    double abs_diff;
    std::vector<double> branch_flips;  // path parameters where the tracked root changes sign
};

GdiCheck lemma_gdi_check(double lambda, double tol = 1e-12);

// F_lambda(x, y), symmetric in x and y.
cplx f_lambda(double lambda, cplx x, cplx y);

struct FLambdaCheck {
    double max_residual;
    cplx y_near_left;   // tracked root next to x = -1/lambda
    cplx y_near_zero;   // tracked root next to x = 0
};

FLambdaCheck f_lambda_check(double lambda, int samples);

struct KFormParams {
    double A1, A2, B1, B2, t1, t2, rho;
};

KFormParams k_form_params(double lambda);

struct DerivCheck {
    double fd;
    double cf2f1;
    double cfK;
};

inline constexpr double fd_step = 1e-4;

DerivCheck deriv_check(double alpha, double h = fd_step);

struct BoundaryLimits {
    cplx yplus_minus_c_from_right;  // theta -> -c+
    cplx yplus_c_from_left;         // theta -> c-
    cplx yplus_zero_from_right;     // theta -> 0+
    cplx yplus_zero_from_left;      // theta -> 0-
    cplx yminus_c_from_right;       // theta -> c+
    cplx yminus_minus_c_from_left;  // theta -> -c-
};

BoundaryLimits boundary_limits(double alpha, double delta = 1e-10);

enum class Poly2D { P_alpha, g_family };

struct Mahler2D {
    double value;
    double err;
    bool meets_torus;  // zero set meets T^2 (log singularities inside)
};

// (1/4 pi^2) double integral of log|poly| over the torus.
Mahler2D mahler2d(Poly2D poly, double alpha, double tol = 1e-6);

struct SplitIntegral {
    double first;   // (1/pi) int_0^{pi/2} log|y_-|
    double second;  // (1/pi) int_{pi/2}^{pi} log|y_-|
    double combination;
};

// S_0 = y^2 + (x^2 + 1) y + x^3 with
// y_-(x) = -((x^2+1)/2)(1 - sqrt(1 - 4x^3/(x^2+1)^2)).
cplx s0_y_minus(cplx x);
SplitIntegral s_family_b11(double tol = 1e-12);

} // namespace mahler::family

#endif
