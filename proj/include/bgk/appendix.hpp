#pragma once

#include <array>
#include <string>
#include <vector>

#include "bgk/types.hpp"

namespace bgk {

/// Values of the seven regrouping polynomials P0..P6 at one s.
/// P0 carries the corrected sign -6(s-1)^7 s^6 (positive on (0,1)).
struct AppendixPolynomials {
    std::array<double, 7> values;
    double operator[](int j) const { return values[static_cast<size_t>(j)]; }
};

AppendixPolynomials appendix_polynomials(double s);

/// Numerator of the degenerate-root condition after regrouping:
/// (tk)^(-6) sum_j P_j(s) (tk)^(2j). Strict positivity on
/// s in (0,1), tk > 0 is the content of the no-degenerate-roots lemma.
double numerator_P(double s, double tk);

/// Printed degree-12 polynomial in (y, tk) before regrouping; equals
/// numerator_P(y*tk, tk) identically.
double quotient_poly(double y, double tk);

/// Hypothetical degenerate-root value of Z(iy) (pure imaginary).
/// Throws domain_error when the printed denominator vanishes.
cplx solZ_expression(double y, double tk);

struct LemmaGrid {
    int nS = 200;
    int nTk = 200;
    double sMin = 0.01, sMax = 0.99;
    double tkMin = 0.05, tkMax = 3.0;
};

struct LemmaReport {
    LemmaGrid grid;
    double minNumeratorValue;
    std::vector<std::string> signViolations;     // empty on success
    std::array<double, 2> p2Roots;               // quartic factor roots
    double p5Root;                               // cubic factor root
    bool p4Monotone;                             // dP4 has no real roots, P4 decreasing
    double s0Minus;                              // (1231 - sqrt(806851))/1155
    std::array<double, 7> pspmCoeffs;            // bound polynomial at s0-
    double pspmCriticalPoint;                    // real critical point in (tk)^2
    double pspmValueAtCritical;
    bool passed;
};

/// Numerical certificates for the appendix lemma: sign-definiteness of
/// P0, P2..P6 on (0,1), s0- in (0,1), reproduction of the printed
/// bound-polynomial coefficients, positivity of that polynomial at its real
/// critical point, and positivity of numerator_P over the grid.
LemmaReport verify_lemma(const LemmaGrid& grid = {});

}  // namespace bgk
