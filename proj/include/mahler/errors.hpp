// errors.hpp
//
// Exception types shared by all modules. Domain violations derive from
// std::domain_error so callers can catch them generically; numerical failures
// (non-convergence, branch tracking, tail bounds) derive from
// numerical_error so the CLI can map them to exit code 2.

#ifndef MAHLER_ERRORS_HPP
#define MAHLER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mahler {

class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Series or quadrature did not reach the requested tolerance.
class convergence_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

// Series refused because |z| > 1.
class divergence_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

class schema_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mahler

#endif
