// quad.cpp

#include "mahler/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "mahler/errors.hpp"

namespace mahler::quad {

namespace {

// Kronrod 15-point abscissae (x_{2j+1} are the Gauss 7-point nodes).
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
    double abs_value;
};

template <class T, class F>
Panel<T> gauss_kronrod(const F& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(center);
    T resk = fc * wgk[7];
    T resg = fc * wg[3];
    double resabs = std::abs(fc) * wgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const T f1 = f(center - dx);
        const T f2 = f(center + dx);
        resk += (f1 + f2) * wgk[j];
        resabs += (std::abs(f1) + std::abs(f2)) * wgk[j];
        if (j % 2 == 1)
            resg += (f1 + f2) * wg[j / 2];
    }
    return {a, b, resk * half, std::abs((resk - resg) * half), resabs * std::abs(half)};
}

template <class T>
struct ByError {
    bool operator()(const Panel<T>& l, const Panel<T>& r) const { return l.error < r.error; }
};

struct Tally {
    long evaluations = 0;
    int panels = 0;
};

template <class T, class F>
std::pair<T, double> adaptive(const F& f, double a, double b, std::span<const double> breakpoints,
                              double tol, Tally& tally)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();

    std::vector<double> edges;
    edges.reserve(breakpoints.size() + 2);
    edges.push_back(a);
    for (double p : breakpoints) {
        if (!(p > a && p < b))
            throw domain_error("integrate: breakpoint outside the open interval");
        if (p <= edges.back())
            throw domain_error("integrate: breakpoints must be sorted and distinct");
        edges.push_back(p);
    }
    edges.push_back(b);

    std::priority_queue<Panel<T>, std::vector<Panel<T>>, ByError<T>> queue;
    std::vector<Panel<T>> frozen;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        queue.push(gauss_kronrod<T>(f, edges[i], edges[i + 1]));
        tally.evaluations += 15;
    }

    auto totals = [&]() {
        T value{};
        double error = 0.0;
        double abs_value = 0.0;
        auto copy = queue;
        while (!copy.empty()) {
            value += copy.top().value;
            error += copy.top().error;
            abs_value += copy.top().abs_value;
            copy.pop();
        }
        for (const auto& p : frozen) {
            value += p.value;
            error += p.error;
            abs_value += p.abs_value;
        }
        return std::make_tuple(value, error, abs_value);
    };

    double error = 0.0;
    double abs_value = 0.0;
    {
        auto [v, e, av] = totals();
        error = e;
        abs_value = av;
    }

    const double min_width = 64.0 * eps * std::max(std::abs(a), std::abs(b));
    while (true) {
        const double floor_tol = std::max(tol, 50.0 * eps * abs_value);
        if (error <= floor_tol)
            break;
        if (queue.empty() || static_cast<int>(queue.size() + frozen.size()) >= max_panels) {
            std::ostringstream os;
            os << "integrate: no convergence on [" << a << ", " << b << "] after "
               << queue.size() + frozen.size() << " panels (error estimate " << error
               << ", tol " << tol << ")";
            throw convergence_error(os.str());
        }
        Panel<T> worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.b - worst.a <= min_width || mid <= worst.a || mid >= worst.b) {
            frozen.push_back(worst);
            continue;
        }
        Panel<T> left = gauss_kronrod<T>(f, worst.a, mid);
        Panel<T> right = gauss_kronrod<T>(f, mid, worst.b);
        tally.evaluations += 30;
        error += left.error + right.error - worst.error;
        abs_value += left.abs_value + right.abs_value - worst.abs_value;
        queue.push(left);
        queue.push(right);
    }

    auto [value, err, av] = totals();
    tally.panels += static_cast<int>(queue.size() + frozen.size());
    return {value, err};
}

} // namespace

QuadResult integrate(const RealFn& f, double a, double b, std::span<const double> breakpoints,
                     double tol)
{
    if (a == b)
        return {};
    Tally tally;
    if (a > b) {
        std::vector<double> rev(breakpoints.rbegin(), breakpoints.rend());
        auto [v, e] = adaptive<double>(f, b, a, rev, tol, tally);
        return {-v, e, tally.evaluations, tally.panels};
    }
    auto [v, e] = adaptive<double>(f, a, b, breakpoints, tol, tally);
    return {v, e, tally.evaluations, tally.panels};
}

ComplexQuadResult integrate_complex(const ComplexOfRealFn& f, double a, double b,
                                    std::span<const double> breakpoints, double tol)
{
    if (a == b)
        return {};
    Tally tally;
    if (a > b) {
        std::vector<double> rev(breakpoints.rbegin(), breakpoints.rend());
        auto [v, e] = adaptive<cplx>(f, b, a, rev, tol, tally);
        return {-v, e, tally.evaluations, tally.panels};
    }
    auto [v, e] = adaptive<cplx>(f, a, b, breakpoints, tol, tally);
    return {v, e, tally.evaluations, tally.panels};
}

ComplexQuadResult integrate_path(const ComplexFn& f, std::span<const cplx> waypoints, double tol)
{
    ComplexQuadResult out;
    if (waypoints.size() < 2)
        return out;
    const double seg_tol = tol / double(waypoints.size() - 1);
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
        const cplx z0 = waypoints[i];
        const cplx dz = waypoints[i + 1] - z0;
        if (dz == 0.0)
            continue;
        const double scale = std::abs(dz);
        auto r = integrate_complex([&](double t) { return f(z0 + t * dz); }, 0.0, 1.0, {},
                                   seg_tol / scale);
        out.value += r.value * dz;
        out.error_estimate += r.error_estimate * scale;
        out.evaluations += r.evaluations;
        out.panels += r.panels;
    }
    return out;
}

} // namespace mahler::quad
