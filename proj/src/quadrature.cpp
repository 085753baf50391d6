#include "bgk/quadrature.hpp"

#include <cmath>

#include "bgk/errors.hpp"

namespace bgk {
namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (symmetric half listed).
constexpr double XGK[8] = {
    0.991455371120812639206854697526, 0.949107912342758524526189684048,
    0.864864423359769072789712788641, 0.741531185599394439863864773281,
    0.586087235467691130294144838259, 0.405845151377397166906606412077,
    0.207784955007898467600689403773, 0.0};
constexpr double WGK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double WG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GKResult {
    cplx value;
    double error;
};

GKResult gk15(const std::function<cplx(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx kron = WGK[7] * fc;
    cplx gauss = WG[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * XGK[j];
        cplx fsum = f(c - dx) + f(c + dx);
        kron += WGK[j] * fsum;
        if (j % 2 == 1) gauss += WG[j / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    return {kron, std::abs(kron - gauss)};
}

cplx adapt(const std::function<cplx(double)>& f, double a, double b,
           double tol, int depth, int maxDepth) {
    GKResult r = gk15(f, a, b);
    if (r.error <= tol || r.error <= 1e-17 * std::abs(r.value)) return r.value;
    if (depth >= maxDepth)
        throw convergence_error("quadrature: subdivision budget exhausted");
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, 0.5 * tol, depth + 1, maxDepth) +
           adapt(f, c, b, 0.5 * tol, depth + 1, maxDepth);
}

}  // namespace

cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               double tol, int maxDepth) {
    if (!(a < b)) throw domain_error("quadrature: empty interval");
    if (!(tol > 0)) throw domain_error("quadrature: tol must be positive");
    return adapt(f, a, b, tol, 0, maxDepth);
}

}  // namespace bgk
