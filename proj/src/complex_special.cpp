#include "bgk/complex_special.hpp"

#include <cmath>
#include <vector>

#include "bgk/errors.hpp"
#include "bgk/quadrature.hpp"

namespace bgk {
namespace {

constexpr double SQRT_PI = 1.7724538509055160272981674833;

// --- Maclaurin region: w(z) = sum (iz)^n / Gamma(n/2 + 1), |z| <= 2 ---

const std::vector<double>& inv_gamma_half_table() {
    static const std::vector<double> table = [] {
        // 1/Gamma(n/2+1) via the recurrence Gamma(x+1) = x Gamma(x)
        std::vector<double> t(120);
        double geven = 1.0;            // Gamma(1), n even: Gamma(n/2+1)
        double godd = 0.5 * SQRT_PI;   // Gamma(3/2), n odd
        for (int n = 0; n < 120; ++n) {
            if (n % 2 == 0) {
                t[static_cast<size_t>(n)] = 1.0 / geven;
                geven *= (n + 2) / 2.0;
            } else {
                t[static_cast<size_t>(n)] = 1.0 / godd;
                godd *= (n + 2) / 2.0;
            }
        }
        return t;
    }();
    return table;
}

cplx w_series(cplx z) {
    const auto& g = inv_gamma_half_table();
    const cplx iz = I * z;
    cplx zn = 1.0;
    cplx sum = 0.0;
    for (size_t n = 0; n < g.size(); ++n) {
        cplx term = zn * g[n];
        sum += term;
        if (n > 8 && std::abs(term) < 1e-18 * std::abs(sum)) break;
        zn *= iz;
    }
    return sum;
}

// --- Large-|z| region: Laplace continued fraction, modified Lentz ---

cplx w_cf(cplx z) {
    constexpr double tiny = 1e-300;
    cplx f = z, C = z, D = 0.0;
    for (int n = 1; n < 60; ++n) {
        const double a = -0.5 * n;
        D = z + a * D;
        if (std::abs(D) < tiny) D = tiny;
        C = z + a / C;
        if (std::abs(C) < tiny) C = tiny;
        D = 1.0 / D;
        const cplx delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return I / (SQRT_PI * f);
}

// --- Middle region: two-grid modified trapezoidal rule, h = 0.5 ---
//
// Midpoint nodes pair with the correction 2 e^{-z^2}/(1 + e^{-2 pi i z/h}),
// integer nodes with 2 e^{-z^2}/(1 - e^{-2 pi i z/h}); the denominators
// cannot both be small, so pick the better-conditioned variant.

struct TrapNodes {
    std::vector<double> t;
    std::vector<double> expt2;  // exp(-t^2)
};

const TrapNodes& nodes_mid() {
    static const TrapNodes n = [] {
        TrapNodes r;
        const double h = 0.5;
        for (int j = -15; j < 15; ++j) {
            double t = (j + 0.5) * h;
            r.t.push_back(t);
            r.expt2.push_back(std::exp(-t * t));
        }
        return r;
    }();
    return n;
}

const TrapNodes& nodes_int() {
    static const TrapNodes n = [] {
        TrapNodes r;
        const double h = 0.5;
        for (int j = -15; j <= 15; ++j) {
            double t = j * h;
            r.t.push_back(t);
            r.expt2.push_back(std::exp(-t * t));
        }
        return r;
    }();
    return n;
}

cplx w_trapezoid(cplx z) {
    const double h = 0.5;
    const cplx E = std::exp(-2.0 * PI * I * z / h);
    const cplx denomPlus = 1.0 + E;
    const cplx denomMinus = 1.0 - E;
    const bool useMid = std::abs(denomPlus) >= std::abs(denomMinus);
    const TrapNodes& n = useMid ? nodes_mid() : nodes_int();
    cplx s = 0.0;
    for (size_t j = 0; j < n.t.size(); ++j) s += n.expt2[j] / (z - n.t[j]);
    s *= I * h / PI;
    const cplx expz2 = std::exp(-z * z);
    return s + 2.0 * expz2 / (useMid ? denomPlus : denomMinus);
}

cplx w_upper(cplx z) {
    const double az = std::abs(z);
    if (az <= 2.0) return w_series(z);
    if (az >= 7.0) return w_cf(z);
    return w_trapezoid(z);
}

// (2n-1)!! for n = 0..39, exact in double up to n = 13 and correctly
// rounded beyond
const std::vector<double>& double_factorials() {
    static const std::vector<double> t = [] {
        std::vector<double> v(40);
        v[0] = 1.0;
        for (int n = 1; n < 40; ++n) v[static_cast<size_t>(n)] = v[static_cast<size_t>(n - 1)] * (2 * n - 1);
        return v;
    }();
    return t;
}

}  // namespace

cplx faddeeva_w(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw domain_error("faddeeva_w: non-finite argument");
    if (z.imag() >= 0.0) return w_upper(z);
    // reflection w(z) = 2 exp(-z^2) - w(-z)
    const double re2 = z.imag() * z.imag() - z.real() * z.real();
    if (re2 > 700.0)
        throw overflow_error("faddeeva_w: reflection factor exp(-z^2) overflows");
    return 2.0 * std::exp(-z * z) - w_upper(-z);
}

cplx plasma_Z_plus(cplx zeta) {
    return I * SQRT_PI_OVER_2 * faddeeva_w(zeta / SQRT_2);
}

cplx plasma_Z(cplx zeta) {
    if (zeta.imag() > 0.0) return plasma_Z_plus(zeta);
    if (zeta.imag() < 0.0) return -plasma_Z_plus(-zeta);
    throw domain_error("plasma_Z: discontinuous on the real axis");
}

cplx plasma_Z_plus_prime(cplx zeta) {
    return -1.0 - zeta * plasma_Z_plus(zeta);
}

DerivativeStack z_derivatives(cplx zeta, bool useEntireBranch) {
    const cplx Z = useEntireBranch ? plasma_Z_plus(zeta) : plasma_Z(zeta);
    const cplx z2 = zeta * zeta;
    DerivativeStack s;
    s.values[0] = Z;
    s.values[1] = -1.0 - zeta * s.values[0];
    s.values[2] = zeta + (z2 - 1.0) * Z;
    s.values[3] = 2.0 - z2 + (3.0 * zeta - zeta * z2) * Z;
    s.values[4] = -5.0 * zeta + zeta * z2 + (z2 * z2 - 6.0 * z2 + 3.0) * Z;
    return s;
}

cplx z_asymptotic(cplx zeta, int nTerms) {
    if (nTerms < 1) throw domain_error("z_asymptotic: nTerms >= 1 required");
    if (zeta == cplx{0.0, 0.0}) throw domain_error("z_asymptotic: zeta != 0 required");
    if (nTerms > 10) nTerms = 10;  // higher terms are below double noise for valid |zeta|
    const auto& fac = double_factorials();
    const cplx inv = 1.0 / zeta;
    const cplx inv2 = inv * inv;
    cplx pow = inv;
    cplx sum = 0.0;
    for (int n = 0; n < nTerms; ++n) {
        sum += fac[static_cast<size_t>(n)] * pow;
        pow *= inv2;
    }
    return -sum;
}

cplx z_asymptotic_tail(cplx zeta, int fromTerm) {
    if (fromTerm < 0) throw domain_error("z_asymptotic_tail: fromTerm >= 0 required");
    const auto& fac = double_factorials();
    const cplx inv = 1.0 / zeta;
    const cplx inv2 = inv * inv;
    cplx pow = inv;
    for (int j = 0; j < fromTerm; ++j) pow *= inv2;
    cplx sum = 0.0;
    double prevMag = 1e300;
    double leadMag = 0.0;
    for (size_t n = static_cast<size_t>(fromTerm); n < fac.size(); ++n) {
        cplx term = fac[n] * pow;
        double mag = std::abs(term);
        if (mag > prevMag) break;          // optimal truncation
        sum += term;
        if (leadMag == 0.0) leadMag = mag;
        if (mag < 1e-18 * leadMag) break;
        prevMag = mag;
        pow *= inv2;
    }
    return -sum;
}

cplx quadrature_Z(cplx zeta, double tol) {
    if (zeta.imag() < 0.01)
        throw domain_error("quadrature_Z: requires Im zeta >= 0.01");
    if (tol < 1e-12) throw domain_error("quadrature_Z: tol >= 1e-12 required");
    // truncation half-width: tail bound e^{-V^2/2}/dist < tol/10
    double V = std::max(8.0, std::abs(zeta.real()) + 6.0);
    auto tail_ok = [&](double v) {
        double dx = std::max(0.0, v - std::abs(zeta.real()));
        double dist = std::max(0.01, std::hypot(dx, zeta.imag()));
        return std::exp(-0.5 * v * v) / dist < 0.1 * tol;
    };
    while (!tail_ok(V)) V += 1.0;
    const double norm = 1.0 / std::sqrt(2.0 * PI);
    auto f = [&](double v) -> cplx {
        return norm * std::exp(-0.5 * v * v) / (cplx(v, 0.0) - zeta);
    };
    return integrate(f, -V, V, 0.5 * tol);
}

}  // namespace bgk
