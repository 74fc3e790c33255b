// recognize.cpp

#include "mahler/recognize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

namespace mahler::recognize {

RationalGuess rational_reconstruct(double x, long long max_den, double tol)
{
    if (max_den < 1)
        throw domain_error("rational_reconstruct: max_den must be positive");
    if (!std::isfinite(x))
        throw domain_error("rational_reconstruct: input is not finite");

    // Convergents h/k of the continued fraction of x.
    long long h_prev = 1, h = static_cast<long long>(std::floor(x));
    long long k_prev = 0, k = 1;
    double frac = x - std::floor(x);
    RationalGuess best{h, k, std::abs(double(h) - x)};
    while (true) {
        const double res = std::abs(double(h) / double(k) - x);
        if (res < best.residual)
            best = {h, k, res};
        if (res < tol)
            return {h, k, res};
        if (frac < 1e-300)
            break;
        const double inv = 1.0 / frac;
        if (inv > 1e18)
            break;
        const long long a = static_cast<long long>(std::floor(inv));
        frac = inv - double(a);
        const long long h_next = a * h + h_prev;
        const long long k_next = a * k + k_prev;
        if (k_next > max_den || k_next <= 0)
            break;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    std::ostringstream os;
    os << "rational_reconstruct: no convergent with denominator <= " << max_den << " within " << tol
       << " of " << x << " (closest " << best.num << "/" << best.den << ", residual "
       << best.residual << ")";
    throw no_candidate_error(os.str(), best);
}

IntegerRelation pslq(const std::vector<double>& x_in, double tol, int max_iter)
{
    const int n = static_cast<int>(x_in.size());
    if (n < 2 || n > 8)
        throw domain_error("pslq: dimension must be between 2 and 8");
    double norm = 0.0;
    for (double v : x_in) {
        if (!std::isfinite(v))
            throw domain_error("pslq: input is not finite");
        norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0)
        throw domain_error("pslq: zero vector");

    const double gamma = std::sqrt(4.0 / 3.0);
    std::vector<double> x(n), y(n), s(n);
    for (int i = 0; i < n; ++i)
        x[i] = x_in[i] / norm;
    for (int k = 0; k < n; ++k) {
        double t = 0.0;
        for (int j = k; j < n; ++j)
            t += x[j] * x[j];
        s[k] = std::sqrt(t);
    }
    y = x;

    // Rows 0..n-1, columns 0..n-2.
    std::vector<std::vector<double>> H(n, std::vector<double>(n - 1, 0.0));
    for (int j = 0; j < n - 1; ++j) {
        H[j][j] = s[j + 1] / s[j];
        for (int i = j + 1; i < n; ++i)
            H[i][j] = -x[i] * x[j] / (s[j] * s[j + 1]);
    }
    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0)), B = A;
    for (int i = 0; i < n; ++i)
        A[i][i] = B[i][i] = 1.0;

    auto reduce_row = [&](int i, int jmax) {
        for (int j = jmax; j >= 0; --j) {
            if (H[j][j] == 0.0)
                continue;
            const double t = std::nearbyint(H[i][j] / H[j][j]);
            if (t == 0.0)
                continue;
            y[j] += t * y[i];
            for (int k = 0; k <= j; ++k)
                H[i][k] -= t * H[j][k];
            for (int k = 0; k < n; ++k) {
                A[i][k] -= t * A[j][k];
                B[k][j] += t * B[k][i];
            }
        }
    };
    for (int i = 1; i < n; ++i)
        reduce_row(i, i - 1);

    auto make_result = [&](int col, int iter, double bound) {
        std::vector<long long> v(n);
        for (int i = 0; i < n; ++i)
            v[i] = static_cast<long long>(std::llround(B[i][col]));
        const auto first = std::find_if(v.begin(), v.end(), [](long long e) { return e != 0; });
        if (first != v.end() && *first < 0)
            for (auto& e : v)
                e = -e;
        double r = 0.0;
        for (int i = 0; i < n; ++i)
            r += double(v[i]) * x_in[i];
        return IntegerRelation{v, std::abs(r), iter, bound};
    };

    // A relation shows up as a tiny entry of y; accept the smallest one
    // whose recomputed residual meets tol.
    auto detect = [&](int iter, double bound) -> std::optional<IntegerRelation> {
        int jmin = 0;
        for (int j = 1; j < n; ++j)
            if (std::abs(y[j]) < std::abs(y[jmin]))
                jmin = j;
        if (std::abs(y[jmin]) < tol) {
            auto rel = make_result(jmin, iter, bound);
            // A residual is only evidence if rounding in sum v_i x_i cannot
            // produce it; otherwise the candidate is an artifact.
            double mag = 0.0;
            for (int i = 0; i < n; ++i)
                mag += std::abs(double(rel.vector[i]) * x_in[i]);
            if (mag * 1e2 * std::numeric_limits<double>::epsilon() > tol * norm) {
                std::ostringstream os;
                os << "pslq: candidate of size " << mag / norm
                   << " is below the double-precision floor; no relation within tol";
                throw no_relation_error(os.str(), bound, iter);
            }
            if (rel.residual < tol * norm)
                return rel;
        }
        return std::nullopt;
    };

    double bound = 0.0;
    // Exact relations with small entries can already appear here.
    if (auto rel = detect(0, bound))
        return *rel;
    for (int iter = 1; iter <= max_iter; ++iter) {
        // Pivot: largest gamma^r |H_rr|, smallest index on ties.
        int r = 0;
        double best = -1.0;
        double gp = gamma;
        for (int i = 0; i < n - 1; ++i) {
            const double v = gp * std::abs(H[i][i]);
            if (v > best) {
                best = v;
                r = i;
            }
            gp *= gamma;
        }
        std::swap(y[r], y[r + 1]);
        std::swap(A[r], A[r + 1]);
        std::swap(H[r], H[r + 1]);
        for (int k = 0; k < n; ++k)
            std::swap(B[k][r], B[k][r + 1]);
        if (r < n - 2) {
            const double t0 = std::hypot(H[r][r], H[r][r + 1]);
            const double t1 = H[r][r] / t0, t2 = H[r][r + 1] / t0;
            for (int i = r; i < n; ++i) {
                const double t3 = H[i][r], t4 = H[i][r + 1];
                H[i][r] = t1 * t3 + t2 * t4;
                H[i][r + 1] = -t2 * t3 + t1 * t4;
            }
        }
        for (int i = r + 1; i < n; ++i)
            reduce_row(i, std::min(i - 1, r + 1));

        double hmax = 0.0;
        for (int j = 0; j < n - 1; ++j)
            hmax = std::max(hmax, std::abs(H[j][j]));
        bound = hmax > 0.0 ? 1.0 / hmax : INFINITY;

        if (auto rel = detect(iter, bound))
            return *rel;

        double amax = 0.0;
        for (const auto& row : A)
            for (double v : row)
                amax = std::max(amax, std::abs(v));
        if (bound > pslq_max_norm || amax > 1e15) {
            std::ostringstream os;
            os << "pslq: no relation with norm below " << bound << " after " << iter
               << " iterations (double precision exhausted)";
            throw no_relation_error(os.str(), bound, iter);
        }
    }
    std::ostringstream os;
    os << "pslq: no relation after " << max_iter << " iterations (norm bound " << bound << ")";
    throw no_relation_error(os.str(), bound, max_iter);
}

} // namespace mahler::recognize
