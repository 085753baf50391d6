#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bgk/types.hpp"

namespace bgk {

using AnalyticFn = std::function<cplx(cplx)>;

/// Axis-aligned rectangle in the complex plane.
struct Rectangle {
    double reMin, reMax, imMin, imMax;

    bool valid() const { return reMin < reMax && imMin < imMax; }
    double width() const { return reMax - reMin; }
    double height() const { return imMax - imMin; }
    double diameter() const;
    cplx center() const { return {0.5 * (reMin + reMax), 0.5 * (imMin + imMax)}; }
    bool contains(cplx z) const {
        return z.real() >= reMin && z.real() <= reMax &&
               z.imag() >= imMin && z.imag() <= imMax;
    }
};

struct ZeroReport {
    cplx location;
    int multiplicity = 1;
    double residual = 0.0;   // |f| at the polished point
    int newtonIterations = 0;
};

/// Zero count inside rect (with multiplicity) by the argument principle.
/// Edge sampling is refined adaptively until every per-step phase jump is
/// below pi/2. Throws contour_error if |f| dips under 1e-9 on the contour
/// and convergence_error if refinement does not settle.
int winding_count(const AnalyticFn& f, const Rectangle& rect, int samplesPerEdge = 32);

struct LocateOptions {
    double tol = 1e-12;        // polish target on |step| and |f|
    int samplesPerEdge = 32;
    int maxDepth = 40;
    double perturb = 1e-6;     // contour-grazing jitter, <= 5 retries
};

/// Recursive quadrisection + Newton/secant polish. Multiplicity clusters
/// (cells that stall below diameter tol with count >= 2) are reported as a
/// single ZeroReport carrying that multiplicity. The multiplicities of the
/// returned reports sum to the top-level winding count.
std::vector<ZeroReport> locate_zeros(const AnalyticFn& f,
                                     const AnalyticFn* fPrime,
                                     Rectangle rect,
                                     const LocateOptions& opt = {});

/// Newton polish (secant when fPrime is null). Throws convergence_error on
/// budget exhaustion and domain_error on derivative underflow (degenerate
/// root signal; callers fall back to cluster handling).
ZeroReport newton_polish(const AnalyticFn& f, const AnalyticFn* fPrime,
                         cplx guess, double tol, int maxIter = 60);

/// All real roots of a real polynomial, coefficients in increasing-degree
/// order (c[0] + c[1] x + ...). Bracketing between critical points of the
/// derivative (computed recursively), refined by bisection/Newton to 1e-12.
std::vector<double> real_poly_roots(const std::vector<double>& coeffs);

/// Number of distinct real roots by a Sturm chain (independent check).
int sturm_count(const std::vector<double>& coeffs);

}  // namespace bgk
