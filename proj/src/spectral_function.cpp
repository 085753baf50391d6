#include "bgk/spectral_function.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "bgk/complex_special.hpp"
#include "bgk/errors.hpp"
#include "bgk/quadrature.hpp"

namespace bgk {

SpectralParams::SpectralParams(double tau_, double k_) : tau(tau_), k(k_) {
    if (!(tau > 0.0)) throw domain_error("SpectralParams: tau > 0 required");
    if (!(k >= 0.0)) throw domain_error("SpectralParams: k >= 0 required");
}

double& GammaCoeffs::entry(int i) {
    double* fields[count] = {&overallDiv, &zeta1, &t3, &poly5, &t1, &poly3, &zq2,
                             &zq4, &zq11, &zqt, &zq5, &z2c, &z2one};
    return *fields[i];
}

MappedPoint map_point(cplx lambda, const SpectralParams& p) {
    if (!(p.k > 0.0)) throw domain_error("map_point: k > 0 required");
    MappedPoint m;
    m.lambda = lambda;
    m.z = -p.tau * lambda - 1.0;
    m.zeta = m.z / (I * p.tk());
    return m;
}

MappedPoint unmap_point(cplx zeta, const SpectralParams& p) {
    if (!(p.k > 0.0)) throw domain_error("unmap_point: k > 0 required");
    MappedPoint m;
    m.zeta = zeta;
    m.z = I * p.tk() * zeta;
    m.lambda = -(m.z + 1.0) / p.tau;
    return m;
}

ComplexMatrix3 matrix_M(cplx zeta) {
    const cplx Z = plasma_Z_plus(zeta);
    const cplx z2 = zeta * zeta;
    ComplexMatrix3 m;
    m[0][0] = Z;
    m[0][1] = 1.0 + zeta * Z;
    m[0][2] = (zeta + (z2 - 1.0) * Z) * INV_SQRT_6;
    m[1][1] = zeta + z2 * Z;
    m[1][2] = (z2 + (z2 - 1.0) * zeta * Z) * INV_SQRT_6;
    m[2][2] = (zeta * z2 - zeta + (z2 * z2 - 2.0 * z2 + 5.0) * Z) / 6.0;
    m[1][0] = m[0][1];
    m[2][0] = m[0][2];
    m[2][1] = m[1][2];
    return m;
}

cplx det3(const ComplexMatrix3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

namespace {

// The closed form sums terms of size ~1/tk near zeta = i/tk while the value
// there is ~(tk)^3 |lambda|^3, so the raw expression is pure rounding noise
// exactly where the small-k roots live. Splitting Z = A + S into the
// three-term asymptotic head and its tail cancels P + A Q + A^2 R exactly;
// the surviving rational part (the constant-plus-decay tail of the function) is
// evaluated from explicit coefficients.
bool far_field_ok(cplx zeta) {
    double a = std::abs(zeta);
    if (a < 8.0) return false;
    if (zeta.imag() >= 0.0) return true;
    // below the axis the entire branch picks up 2i sqrt(pi/2) e^(-zeta^2/2),
    // which the tail series cannot see; require it to be negligible
    return zeta.real() * zeta.real() - zeta.imag() * zeta.imag() > 100.0;
}

struct GammaPieces {
    cplx Q, R, A, S, C;
};

GammaPieces gamma_far_pieces(cplx zeta, double t) {
    GammaPieces g;
    const cplx z2 = zeta * zeta;
    g.Q = z2 - (z2 * z2 + 4.0 * z2 + 11.0) * t * t + 2.0 * I * z2 * zeta * t - 5.0;
    g.R = -4.0 * I * ((z2 + 1.0) * t - I * zeta);
    const cplx w = 1.0 / zeta;
    const cplx w2 = w * w;
    g.A = -w * (1.0 + w2 * (1.0 + 3.0 * w2));
    g.S = z_asymptotic_tail(zeta, 3);
    g.C = 6.0 * I * t * t * t
        + t * t * w * (18.0 + w2 * (23.0 + 33.0 * w2))
        - I * t * w2 * (18.0 + w2 * (36.0 + w2 * (52.0 + w2 * (60.0 + 36.0 * w2))))
        - w * w2 * (6.0 + w2 * (13.0 + w2 * (24.0 + 36.0 * w2)));
    return g;
}

cplx gamma_far(cplx zeta, double t) {
    GammaPieces g = gamma_far_pieces(zeta, t);
    return (g.C + g.S * (g.Q + 2.0 * g.A * g.R) + g.S * g.S * g.R) / 6.0;
}

cplx gamma_dzeta_far(cplx zeta, double t) {
    const cplx z2 = zeta * zeta;
    const cplx Qd = -zeta * (z2 - 15.0) + zeta * (z2 * z2 + 3.0) * t * t -
                    2.0 * I * (z2 * z2 - 7.0 * z2 - 4.0) * t;
    const cplx Rd = 8.0 * z2 + 8.0 * I * z2 * zeta * t - 4.0;
    const cplx w = 1.0 / zeta;
    const cplx w2 = w * w;
    const cplx A = -w * (1.0 + w2 * (1.0 + 3.0 * w2));
    const cplx S = z_asymptotic_tail(zeta, 3);
    const cplx Cd = w2 * w2 * (3.0 + w2 * (20.0 + w2 * (48.0 - 36.0 * w2)))
                  + I * t * w * w2 * (6.0 + w2 * (24.0 + 72.0 * w2))
                  - t * t * w2 * (3.0 + 9.0 * w2);
    return (Cd + S * (Qd + 2.0 * A * Rd) + S * S * Rd) / 6.0;
}

}  // namespace

cplx gamma(cplx zeta, const SpectralParams& p, const GammaCoeffs& c) {
    const double t = p.tk();
    const cplx Z = plasma_Z_plus(zeta);
    const cplx z2 = zeta * zeta;
    const cplx polyPart = c.zeta1 * zeta + c.t3 * I * t * t * t -
                          zeta * (z2 + c.poly5) * t * t +
                          c.t1 * I * (z2 + c.poly3) * t;
    const cplx zPart = Z * (c.zq2 * z2 - (z2 * z2 + c.zq4 * z2 + c.zq11) * t * t +
                            c.zqt * I * z2 * zeta * t - c.zq5);
    const cplx z2Part = -c.z2c * I * Z * Z * ((z2 + c.z2one) * t - I * zeta);
    return (polyPart + zPart + z2Part) / c.overallDiv;
}

cplx gamma(cplx zeta, const SpectralParams& p) {
    if (far_field_ok(zeta)) return gamma_far(zeta, p.tk());
    static const GammaCoeffs defaults{};
    return gamma(zeta, p, defaults);
}

cplx gamma_det_form(cplx zeta, const SpectralParams& p) {
    ComplexMatrix3 m = matrix_M(zeta);
    const cplx shift = I * p.tk();
    for (int i = 0; i < 3; ++i) m[i][i] -= shift;
    return det3(m);
}

double gamma_scale(cplx zeta, const SpectralParams& p) {
    const double t = p.tk();
    if (far_field_ok(zeta)) {
        GammaPieces g = gamma_far_pieces(zeta, t);
        double s = std::abs(g.S);
        return (std::abs(g.C) + s * (std::abs(g.Q) + 2.0 * std::abs(g.A) * std::abs(g.R)) +
                s * s * std::abs(g.R)) / 6.0;
    }
    const double az = std::abs(zeta);
    const double az2 = az * az;
    const double aZ = std::abs(plasma_Z_plus(zeta));
    const double poly = az + 6.0 * t * t * t + az * (az2 + 5.0) * t * t + 2.0 * (az2 + 3.0) * t;
    const double zpart = aZ * (az2 + (az2 * az2 + 4.0 * az2 + 11.0) * t * t + 2.0 * az2 * az * t + 5.0);
    const double z2part = 4.0 * aZ * aZ * ((az2 + 1.0) * t + az);
    return (poly + zpart + z2part) / 6.0;
}

cplx gamma_dzeta(cplx zeta, const SpectralParams& p) {
    const double t = p.tk();
    if (far_field_ok(zeta)) return gamma_dzeta_far(zeta, t);
    const cplx Z = plasma_Z_plus(zeta);
    const cplx z2 = zeta * zeta;
    const cplx z4 = z2 * z2;
    return (6.0 - z2 + (z4 + z2 + 6.0) * t * t +
            Z * (-zeta * (z2 - 15.0) + zeta * (z4 + 3.0) * t * t -
                 2.0 * I * (z4 - 7.0 * z2 - 4.0) * t) -
            2.0 * I * (z2 - 2.0) * zeta * t +
            Z * Z * (8.0 * z2 + 8.0 * I * z2 * zeta * t - 4.0)) / 6.0;
}

cplx gamma_dk(cplx zeta, const SpectralParams& p) {
    const double t = p.tk();
    const cplx Z = plasma_Z_plus(zeta);
    const cplx z2 = zeta * zeta;
    const cplx dGdt = (18.0 * I * t * t - 2.0 * zeta * (z2 + 5.0) * t +
                       2.0 * I * (z2 + 3.0) +
                       Z * (-2.0 * (z2 * z2 + 4.0 * z2 + 11.0) * t + 2.0 * I * z2 * zeta) -
                       4.0 * I * Z * Z * (z2 + 1.0)) / 6.0;
    return p.tau * dGdt;
}

cplx shear_condition(cplx zeta, const SpectralParams& p) {
    return plasma_Z_plus(zeta) - I * p.tk();
}

cplx full_determinant(cplx z, const SpectralParams& p, const GammaCoeffs& coeffs) {
    if (!(p.k > 0.0))
        throw domain_error("full_determinant: k > 0 required (k = 0 spectrum is known in closed form)");
    const double t = p.tk();
    const cplx it = I * t;
    const cplx zeta = z / it;
    const cplx shear = plasma_Z_plus(zeta) - it;
    const cplx it5 = it * it * it * it * it;
    return shear * shear * gamma(zeta, p, coeffs) / it5;
}

cplx full_determinant(cplx z, const SpectralParams& p) {
    if (!(p.k > 0.0))
        throw domain_error("full_determinant: k > 0 required (k = 0 spectrum is known in closed form)");
    const double t = p.tk();
    const cplx it = I * t;
    const cplx zeta = z / it;
    const cplx shear = plasma_Z_plus(zeta) - it;
    const cplx it5 = it * it * it * it * it;
    return shear * shear * gamma(zeta, p) / it5;
}

namespace {

// Moment integrals In = (2pi)^(-1/2) Int w^n exp(-w^2/2)/(i tk w - z) dw,
// n = 0..4, by direct quadrature; no plasma dispersion function involved.
struct MomentIntegrals {
    cplx I0, I1, I2, I3, I4;
};

MomentIntegrals moment_integrals(cplx z, const SpectralParams& p, double tol) {
    const double t = p.tk();
    const cplx zeta = z / (I * t);
    if (zeta.imag() < 0.01)
        throw domain_error("quadrature determinant: requires Im(z/(i tk)) >= 0.01");
    double V = std::max(9.0, std::abs(zeta.real()) + 7.0);
    const double norm = 1.0 / std::sqrt(2.0 * PI);
    MomentIntegrals m;
    cplx* dst[5] = {&m.I0, &m.I1, &m.I2, &m.I3, &m.I4};
    for (int n = 0; n < 5; ++n) {
        auto f = [&, n](double w) -> cplx {
            double wn = 1.0;
            for (int j = 0; j < n; ++j) wn *= w;
            return norm * wn * std::exp(-0.5 * w * w) / (I * t * w - z);
        };
        *dst[n] = integrate(f, -V, V, tol);
    }
    return m;
}

ComplexMatrix3 longitudinal_block(const MomentIntegrals& m) {
    ComplexMatrix3 b;
    b[0][0] = m.I0;
    b[0][1] = m.I1;
    b[0][2] = (m.I2 - m.I0) * INV_SQRT_6;
    b[1][1] = m.I2;
    b[1][2] = (m.I3 - m.I1) * INV_SQRT_6;
    b[2][2] = (m.I4 - 2.0 * m.I2 + 5.0 * m.I0) / 6.0;
    b[1][0] = b[0][1];
    b[2][0] = b[0][2];
    b[2][1] = b[1][2];
    return b;
}

}  // namespace

cplx quadrature_determinant(cplx z, const SpectralParams& p, double tol) {
    if (!(p.k > 0.0)) throw domain_error("quadrature_determinant: k > 0 required");
    MomentIntegrals m = moment_integrals(z, p, tol);
    ComplexMatrix3 block = longitudinal_block(m);
    for (int i = 0; i < 3; ++i) block[i][i] -= 1.0;
    const cplx shear = m.I0 - 1.0;
    return det3(block) * shear * shear;
}

ComplexMatrix5 greens_GS(cplx z, const SpectralParams& p, double tol) {
    if (!(p.k > 0.0)) throw domain_error("greens_GS: k > 0 required");
    MomentIntegrals m = moment_integrals(z, p, tol);
    ComplexMatrix5 g{};
    // basis order (e0, e1, e2, e3, e4); rows/cols 2,3 decouple
    g[0][0] = m.I0;
    g[0][1] = g[1][0] = m.I1;
    g[0][4] = g[4][0] = (m.I2 - m.I0) * INV_SQRT_6;
    g[1][1] = m.I2;
    g[1][4] = g[4][1] = (m.I3 - m.I1) * INV_SQRT_6;
    g[4][4] = (m.I4 - 2.0 * m.I2 + 5.0 * m.I0) / 6.0;
    g[2][2] = m.I0;
    g[3][3] = m.I0;
    return g;
}

ComplexMatrix5 greens_GT(cplx z, const SpectralParams& p, double tol) {
    ComplexMatrix5 gs = greens_GS(z, p, tol);
    Eigen::Matrix<cplx, 5, 5> S, M;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) S(i, j) = gs[static_cast<size_t>(i)][static_cast<size_t>(j)];
    M = Eigen::Matrix<cplx, 5, 5>::Identity() - S;
    Eigen::PartialPivLU<Eigen::Matrix<cplx, 5, 5>> lu(M);
    if (std::abs(lu.determinant()) <= 1e-10)
        throw convergence_error("greens_GT: Id - G_S is near-singular (discrete eigenvalue nearby)");
    // G_T (Id - G_S) = G_S  <=>  (Id - G_S)^T G_T^T = G_S^T
    Eigen::PartialPivLU<Eigen::Matrix<cplx, 5, 5>> luT(M.transpose().eval());
    Eigen::Matrix<cplx, 5, 5> Gt = luT.solve(S.transpose()).transpose();
    ComplexMatrix5 out;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) out[static_cast<size_t>(i)][static_cast<size_t>(j)] = Gt(i, j);
    return out;
}

Rectangle strip_rect_zeta(const SpectralParams& p, double edgeEps) {
    if (!(p.k > 0.0)) throw domain_error("strip_rect_zeta: k > 0 required");
    const double tk = p.tk();
    const double R = std::max(10.0, 5.0 / tk);
    // top edge sits a lambda-margin above the strip: the region above
    // carries no zeros (dissipativity), and at small k the edge would
    // otherwise graze the cubically degenerate corner zeta = i/tk. The
    // margin grows at small tau, where the squared shear factor flattens
    // the determinant near the corner as well.
    const double topMargin = std::max(0.05, 0.15 / p.tau) / p.k;
    return {-R, R, edgeEps, 1.0 / tk + topMargin};
}

Rectangle strip_rect_z(const SpectralParams& p, double edgeEps) {
    Rectangle zr = strip_rect_zeta(p, edgeEps);
    const double tk = p.tk();
    // z = i tk zeta rotates the rectangle by 90 degrees
    return {-tk * zr.imMax, -tk * zr.imMin, tk * zr.reMin, tk * zr.reMax};
}

}  // namespace bgk
