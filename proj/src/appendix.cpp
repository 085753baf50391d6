#include "bgk/appendix.hpp"

#include <cmath>

#include "bgk/errors.hpp"
#include "bgk/rootfinder.hpp"

namespace bgk {
namespace {

double p0(double s) {
    double u = s - 1.0;
    return -6.0 * u * u * u * u * u * u * u * std::pow(s, 6);
}
double p1(double s) {
    double u = s - 1.0;
    return u * u * u * u * u * std::pow(s, 4) * (42.0 * s * s - 101.0 * s + 37.0);
}
double p1_quartic(double s) {  // the factor of P2
    return ((132.0 * s - 635.0) * s + 1007.0) * s * s - 608.0 * s + 130.0;
}
double p2(double s) {
    double u = s - 1.0;
    return -u * u * u * s * s * p1_quartic(s);
}
double p3(double s) {
    return ((((((-468.0 * s + 2278.0) * s - 4608.0) * s + 5114.0) * s - 3526.0) * s +
             1625.0) * s - 490.0) * s + 75.0;
}
double p4(double s) {
    return ((((-342.0 * s + 1092.0) * s - 1622.0) * s + 1436.0) * s - 724.0) * s + 165.0;
}
double p5(double s) { return 3.0 * (((-18.0 * s + 75.0) * s - 86.0) * s + 39.0); }

// proof's slack variant of P1 (quadratic constant 38 - 34/175), the version
// whose minimizer s0- and printed coefficients the appendix works with
double p1_slack(double s) {
    double u = s - 1.0;
    return u * u * u * u * u * std::pow(s, 4) *
           (42.0 * s * s - 101.0 * s + 38.0 - 34.0 / 175.0);
}

}  // namespace

AppendixPolynomials appendix_polynomials(double s) {
    return {{p0(s), p1(s), p2(s), p3(s), p4(s), p5(s), 27.0}};
}

double numerator_P(double s, double tk) {
    if (!(tk > 0.0)) throw domain_error("numerator_P: tk > 0 required");
    AppendixPolynomials P = appendix_polynomials(s);
    const double t2 = tk * tk;
    double acc = P[6];
    for (int j = 5; j >= 0; --j) acc = acc * t2 + P[j];
    const double t6 = t2 * t2 * t2;
    return acc / t6;
}

double quotient_poly(double y, double tk) {
    const double t = tk;
    const double y2 = y * y;
    double q = 0.0;
    q += 6.0 * std::pow(t, 7) * y * y2 * (y2 + 1.0) * (y2 + 1.0) *
         (-y2 * y2 * y2 + 9.0 * y2 * y2 - 39.0 * y2 - 9.0);
    q += std::pow(t, 6) * ((((((42.0 * y2 - 311.0) * y2 + 1031.0) * y2 + 2278.0) * y2 +
                             1092.0) * y2 + 225.0) * y2 + 27.0);
    q += 2.0 * std::pow(t, 5) * y * (((((-63.0 * y2 + 481.0) * y2 - 1654.0) * y2 -
                                       2304.0) * y2 - 811.0) * y2 - 129.0);
    q -= std::pow(t, 4) * (((((-210.0 * y2 + 1615.0) * y2 - 5666.0) * y2 - 5114.0) * y2 -
                            1436.0) * y2 - 117.0);
    q -= 2.0 * std::pow(t, 3) * y * ((((105.0 * y2 - 795.0) * y2 + 2805.0) * y2 +
                                      1763.0) * y2 + 362.0);
    q += t * t * ((((126.0 * y2 - 917.0) * y2 + 3221.0) * y2 + 1625.0) * y2 + 165.0);
    q += 2.0 * t * y * (((-21.0 * y2 + 143.0) * y2 - 499.0) * y2 - 245.0);
    q += ((6.0 * y2 - 37.0) * y2 + 130.0) * y2 + 75.0;
    return q;
}

cplx solZ_expression(double y, double tk) {
    const double t = tk;
    const double y2 = y * y;
    const double num = y * (12.0 * t * t * t * y + t * t * (y2 * y2 - 8.0 * y2 - 7.0) -
                            2.0 * t * y * (y2 - 7.0) + y2 - 5.0);
    const double y2m3 = y2 - 3.0;
    const double den = t * t * ((y2 - 7.0) * y2 * y2 + 19.0 * y2 + 3.0) -
                       2.0 * t * y2m3 * y2m3 * y + (y2 - 4.0) * y2 + 5.0;
    double scale = std::abs(t * t) * (std::pow(std::abs(y), 6) + 1.0) + std::abs(y2 * y2) + 10.0;
    if (std::abs(den) < 1e-14 * scale)
        throw domain_error("solZ_expression: denominator vanishes");
    return cplx(0.0, num / den);
}

LemmaReport verify_lemma(const LemmaGrid& grid) {
    if (grid.nS < 200 || grid.nTk < 200)
        throw domain_error("verify_lemma: grid resolution >= 200 per axis required");
    LemmaReport rep{};
    rep.grid = grid;
    rep.passed = true;

    // (a) sign-definiteness of P0, P2..P6 on (0,1); P1 is allowed to change sign
    const char* names[7] = {"P0", "P1", "P2", "P3", "P4", "P5", "P6"};
    for (int j : {0, 2, 3, 4, 5, 6}) {
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i <= grid.nS; ++i) {
            double s = grid.sMin + (grid.sMax - grid.sMin) * i / grid.nS;
            double v = appendix_polynomials(s)[j];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo <= 0.0) {
            rep.signViolations.push_back(std::string(names[j]) + " not strictly positive on (0,1)");
            rep.passed = false;
        }
        (void)hi;
    }

    // diagnostics: quartic factor of P2, cubic factor of P5, monotonicity of P4
    std::vector<double> quartic = {130.0, -608.0, 1007.0, -635.0, 132.0};
    std::vector<double> qroots = real_poly_roots(quartic);
    if (qroots.size() == 2) {
        rep.p2Roots = {qroots[0], qroots[1]};
    } else {
        rep.signViolations.push_back("P2 quartic factor: expected exactly two real roots");
        rep.passed = false;
    }
    std::vector<double> cubic = {39.0, -86.0, 75.0, -18.0};
    std::vector<double> croots = real_poly_roots(cubic);
    rep.p5Root = croots.size() == 1 ? croots[0] : 0.0;
    if (croots.size() != 1) {
        rep.signViolations.push_back("P5 cubic factor: expected exactly one real root");
        rep.passed = false;
    }
    std::vector<double> dP4 = {-724.0, 2.0 * 1436.0, -3.0 * 1622.0, 4.0 * 1092.0, -5.0 * 342.0};
    rep.p4Monotone = real_poly_roots(dP4).empty();
    if (!rep.p4Monotone) {
        rep.signViolations.push_back("dP4/ds unexpectedly has real roots");
        rep.passed = false;
    }

    // (b) s0- in (0,1)
    rep.s0Minus = (1231.0 - std::sqrt(806851.0)) / 1155.0;
    if (!(rep.s0Minus > 0.0 && rep.s0Minus < 1.0)) {
        rep.signViolations.push_back("s0- outside (0,1)");
        rep.passed = false;
    }

    // (c) bound polynomial at the P1~ minimizer: coefficients of (tk)^(2j),
    // P1 replaced by the proof's slack variant; positive at its critical point
    AppendixPolynomials P = appendix_polynomials(rep.s0Minus);
    for (int j = 0; j < 7; ++j) rep.pspmCoeffs[static_cast<size_t>(j)] = P[j];
    rep.pspmCoeffs[1] = p1_slack(rep.s0Minus);
    std::vector<double> pspm(rep.pspmCoeffs.begin(), rep.pspmCoeffs.end());
    std::vector<double> dpspm;
    for (size_t j = 1; j < pspm.size(); ++j)
        dpspm.push_back(static_cast<double>(j) * pspm[j]);
    std::vector<double> uroots = real_poly_roots(dpspm);
    double bestU = -1.0, bestVal = 1e300;
    for (double u : uroots) {
        if (u <= 0.0) continue;
        double v = 0.0;
        for (size_t j = pspm.size(); j-- > 0;) v = v * u + pspm[j];
        if (v < bestVal) {
            bestVal = v;
            bestU = u;
        }
    }
    if (bestU < 0.0) {  // all critical points negative: minimum at u -> 0+
        bestU = 0.0;
        bestVal = pspm[0];
    }
    rep.pspmCriticalPoint = bestU;
    rep.pspmValueAtCritical = bestVal;
    if (!(bestVal > 0.0)) {
        rep.signViolations.push_back("bound polynomial non-positive at its critical point");
        rep.passed = false;
    }

    // (d) positivity of the full numerator over the grid
    rep.minNumeratorValue = 1e300;
    for (int i = 0; i <= grid.nS; ++i) {
        double s = grid.sMin + (grid.sMax - grid.sMin) * i / grid.nS;
        for (int j = 0; j <= grid.nTk; ++j) {
            double tk = grid.tkMin + (grid.tkMax - grid.tkMin) * j / grid.nTk;
            rep.minNumeratorValue = std::min(rep.minNumeratorValue, numerator_P(s, tk));
        }
    }
    if (!(rep.minNumeratorValue > 0.0)) {
        rep.signViolations.push_back("numerator_P not strictly positive on the grid");
        rep.passed = false;
    }
    return rep;
}

}  // namespace bgk
