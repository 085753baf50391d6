#pragma once

#include <array>

#include "bgk/types.hpp"

namespace bgk {

/// Z, Z', Z'', Z''', Z'''' at one point, built through the recurrence
/// Z' = -1 - zeta Z so the stack is consistent by construction.
struct DerivativeStack {
    std::array<cplx, 5> values;
    cplx operator[](int i) const { return values[static_cast<size_t>(i)]; }
};

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
///
/// Regional algorithm: Maclaurin series for |z| <= 2, Lentz continued
/// fraction for |z| >= 7, two-grid modified trapezoidal rule in between;
/// lower half-plane by the reflection w(z) = 2 exp(-z^2) - w(-z).
/// Relative error <= 1e-13 for Im z >= 0. Throws overflow_error when the
/// reflection factor exp(-z^2) exceeds the double range.
cplx faddeeva_w(cplx z);

/// Entire branch Z_+(zeta) = i sqrt(pi/2) w(zeta/sqrt(2)); agrees with the
/// plasma dispersion function for Im zeta > 0 and continues it analytically
/// through the real axis.
cplx plasma_Z_plus(cplx zeta);

/// Two-sided plasma dispersion function (sign(Im zeta) branch). Domain error
/// on the real axis, where the function jumps.
cplx plasma_Z(cplx zeta);

/// First derivative of the entire branch, Z' = -1 - zeta Z.
cplx plasma_Z_plus_prime(cplx zeta);

/// (Z, Z', Z'', Z''', Z'''') from the recurrence. With useEntireBranch the
/// stack is built on Z_+; otherwise on the two-sided Z (Im zeta != 0).
DerivativeStack z_derivatives(cplx zeta, bool useEntireBranch = true);

/// Truncated asymptotic series -sum_{n<nTerms} (2n-1)!!/zeta^(2n+1),
/// with (-1)!! = 1.
cplx z_asymptotic(cplx zeta, int nTerms);

/// Tail of the asymptotic series from term index fromTerm on, summed to its
/// optimal truncation (stops when terms grow or fall below the noise of the
/// leading tail term). For |zeta| >= 8 this equals Z - head to ~1e-18.
cplx z_asymptotic_tail(cplx zeta, int fromTerm);

/// Independent oracle: direct adaptive quadrature of
/// (2pi)^(-1/2) Int exp(-v^2/2)/(v - zeta) dv. Requires Im zeta >= 0.01 and
/// tol >= 1e-12 (pole-distance guard).
cplx quadrature_Z(cplx zeta, double tol);

}  // namespace bgk
