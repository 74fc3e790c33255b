// recognize.hpp
//
// Exact rationals and small integer relations from double-precision values.

#ifndef MAHLER_RECOGNIZE_HPP
#define MAHLER_RECOGNIZE_HPP

#include <vector>

#include "mahler/errors.hpp"

namespace mahler::recognize {

struct RationalGuess {
    long long num;
    long long den;
    double residual;  // |num/den - x|
};

// Thrown when no convergent with den <= max_den is within tol.
class no_candidate_error : public numerical_error {
public:
    no_candidate_error(const std::string& what, RationalGuess best)
        : numerical_error(what), best(best)
    {
    }
    RationalGuess best;  // closest convergent within max_den
};

// First continued-fraction convergent of x with denominator <= max_den and
// residual < tol.
RationalGuess rational_reconstruct(double x, long long max_den, double tol);

struct IntegerRelation {
    std::vector<long long> vector;
    double residual;  // |sum v_i x_i| on the caller's input
    int iterations;
    double norm_bound;  // no relation of smaller Euclidean norm exists
};

class no_relation_error : public numerical_error {
public:
    no_relation_error(const std::string& what, double bound, int iterations)
        : numerical_error(what), norm_bound(bound), iterations(iterations)
    {
    }
    double norm_bound;
    int iterations;
};

inline constexpr double pslq_max_norm = 1e10;

// PSLQ (gamma = sqrt(4/3)) in double precision, dim 2..8. The input is
// rescaled internally; the returned vector has its first nonzero entry
// positive.
IntegerRelation pslq(const std::vector<double>& x, double tol = 1e-10, int max_iter = 10000);

} // namespace mahler::recognize

#endif
