// quad.hpp
//
// Adaptive Gauss-Kronrod (7/15) quadrature on finite intervals. Panels are
// seeded at the caller's breakpoints and never straddle one; the panel with
// the largest |K15 - G7| is bisected until the summed estimate meets tol.

#ifndef MAHLER_QUAD_HPP
#define MAHLER_QUAD_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace mahler::quad {

using cplx = std::complex<double>;

inline constexpr int max_panels = 1 << 14;

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    int panels = 0;
};

struct ComplexQuadResult {
    cplx value{0.0, 0.0};
    double error_estimate = 0.0;
    long evaluations = 0;
    int panels = 0;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(cplx)>;
using ComplexOfRealFn = std::function<cplx(double)>;

// Integrate f over [a, b]; a > b integrates over [b, a] and negates.
// Breakpoints must lie strictly inside the interval and be sorted.
QuadResult integrate(const RealFn& f, double a, double b,
                     std::span<const double> breakpoints, double tol);

inline QuadResult integrate(const RealFn& f, double a, double b, double tol)
{
    return integrate(f, a, b, {}, tol);
}

// Complex-valued integrand of a real variable, same scheme.
ComplexQuadResult integrate_complex(const ComplexOfRealFn& f, double a, double b,
                                    std::span<const double> breakpoints, double tol);

// Contour integral of f along the polyline through waypoints; each segment
// gets tol / segments.
ComplexQuadResult integrate_path(const ComplexFn& f, std::span<const cplx> waypoints,
                                 double tol);

} // namespace mahler::quad

#endif
