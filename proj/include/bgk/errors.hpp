#pragma once

#include <stdexcept>
#include <string>

namespace bgk {

// Precondition / argument-domain violations.
struct domain_error : std::invalid_argument {
    explicit domain_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Iteration budgets exhausted (quadrature subdivision, Newton, continuation).
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A contour passes too close to a zero; caller should perturb the rectangle.
struct contour_error : std::runtime_error {
    explicit contour_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal cross-checks disagree (e.g. winding total vs located multiplicities).
struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Floating-point range exceeded (Faddeeva reflection factor).
struct overflow_error : std::runtime_error {
    explicit overflow_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bgk
