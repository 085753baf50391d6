#pragma once

#include <functional>

#include "bgk/types.hpp"

namespace bgk {

// Adaptive Gauss-Kronrod (7,15) integration of a complex-valued function on
// [a, b] to absolute tolerance tol. Throws convergence_error when the
// subdivision budget is exhausted before the estimate settles.
cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               double tol, int maxDepth = 60);

}  // namespace bgk
