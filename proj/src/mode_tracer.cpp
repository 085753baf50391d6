#include "bgk/mode_tracer.hpp"

#include <algorithm>
#include <cmath>

#include "bgk/complex_special.hpp"
#include "bgk/errors.hpp"

namespace bgk {

const char* mode_name(ModeKind kind) {
    switch (kind) {
        case ModeKind::Shear: return "shear";
        case ModeKind::Diffusion: return "diffusion";
        case ModeKind::Acoustic: return "acoustic";
        case ModeKind::AcousticConjugate: return "acoustic_conj";
    }
    return "?";
}

std::vector<std::pair<ModeKind, cplx>> seed_modes(const SpectralParams& p) {
    if (p.k > 0.1 / p.tau + 1e-15)
        throw domain_error("seed_modes: asymptotic seeds require k <= 0.1/tau");
    const double k = p.k, tau = p.tau;
    const double damp = -tau * k * k;
    const double sound = std::sqrt(5.0 / 3.0) * k;
    return {{ModeKind::Shear, cplx(damp, 0.0)},
            {ModeKind::Diffusion, cplx(damp, 0.0)},
            {ModeKind::Acoustic, cplx(damp, sound)},
            {ModeKind::AcousticConjugate, cplx(damp, -sound)}};
}

cplx branch_derivative(cplx zeta, const SpectralParams& p) {
    cplx dz = gamma_dzeta(zeta, p);
    // degeneracy threshold in units of the natural (tk)^3 collapse of the
    // spectral function near the strip corner
    const double tk3 = std::pow(p.tk(), 3);
    if (std::abs(dz) < 1e-12 * std::min(1.0, tk3))
        throw domain_error("branch_derivative: dGamma/dzeta degenerate (anomaly)");
    return -gamma_dk(zeta, p) / dz;
}

namespace {

bool is_gamma_mode(ModeKind kind) { return kind != ModeKind::Shear; }

// Newton corrector for the defining equation of the mode at fixed k.
// Accepts either step convergence or stagnation at the floating-point noise
// floor of the closed form (the cancellation scale dominates near the top
// strip corner at small tk). Returns false on failure.
bool correct(ModeKind kind, const SpectralParams& p, cplx start, double tol,
             cplx& root, double& residual) try {
    cplx z = start;
    cplx bestZ = start;
    double bestF = 1e300;
    for (int it = 0; it < 40; ++it) {
        cplx f, d;
        if (is_gamma_mode(kind)) {
            f = gamma(z, p);
            d = gamma_dzeta(z, p);
        } else {
            f = shear_condition(z, p);
            d = plasma_Z_plus_prime(z);
        }
        if (std::abs(f) < bestF) {
            bestF = std::abs(f);
            bestZ = z;
        }
        if (std::abs(d) < 1e-14) break;
        cplx step = f / d;
        z -= step;
        if (std::abs(step) <= tol * (1.0 + std::abs(z))) {
            cplx fEnd = is_gamma_mode(kind) ? gamma(z, p) : shear_condition(z, p);
            if (std::abs(fEnd) < bestF) {
                bestF = std::abs(fEnd);
                bestZ = z;
            }
            break;
        }
    }
    double floor = is_gamma_mode(kind)
                       ? 100.0 * 2.3e-16 * gamma_scale(bestZ, p)
                       : 100.0 * 2.3e-16 * (1.0 + std::abs(bestZ) * SQRT_PI_OVER_2);
    root = bestZ;
    residual = bestF;
    return bestF <= std::max({tol, 1e-11, floor});
} catch (const overflow_error&) {
    return false;  // iterate wandered into the deep lower half-plane
}

cplx mode_tangent(ModeKind kind, cplx zeta, const SpectralParams& p) {
    if (is_gamma_mode(kind)) return branch_derivative(zeta, p);
    // shear: Z(zeta) = i tau k  =>  dzeta/dk = i tau / Z'(zeta)
    return I * p.tau / plasma_Z_plus_prime(zeta);
}

// branch velocity in the eigenvalue plane; lambda = -i k zeta - 1/tau, so
// dlambda/dk = -i (zeta + k dzeta/dk). The zeta-plane tangent blows up like
// 1/(tau k^2) toward k = 0 while this combination stays O(1), which is why
// the predictor works in lambda.
cplx lambda_velocity(ModeKind kind, cplx zeta, const SpectralParams& p) {
    return -I * (zeta + p.k * mode_tangent(kind, zeta, p));
}

bool kind_character_ok(ModeKind kind, cplx lambda) {
    double imTol = 1e-7 * (1.0 + std::abs(lambda));
    switch (kind) {
        case ModeKind::Shear:
        case ModeKind::Diffusion: return std::abs(lambda.imag()) <= imTol;
        case ModeKind::Acoustic: return lambda.imag() > -imTol;
        case ModeKind::AcousticConjugate: return lambda.imag() < imTol;
    }
    return false;
}

}  // namespace

ModeBranch trace_branch(ModeKind kind, const SpectralParams& p0, double kMax,
                        const TraceControl& ctrl) {
    if (ctrl.tol < 1e-13) throw domain_error("trace_branch: ctrl.tol >= 1e-13 required");
    if (!(kMax > p0.k)) throw domain_error("trace_branch: kMax must exceed the seed k");
    const double tau = p0.tau;
    double k = p0.k > 0.0 ? p0.k : 0.01 / tau;
    if (k > 0.1 / tau) throw domain_error("trace_branch: seed k above asymptotic guard 0.1/tau");

    cplx seedLambda{};
    for (auto& [kd, lam] : seed_modes(SpectralParams(tau, k)))
        if (kd == kind) seedLambda = lam;

    ModeBranch branch{kind, {}, std::nullopt};
    SpectralParams p(tau, k);
    cplx zeta = map_point(seedLambda, p).zeta;
    cplx root;
    double residual;
    if (!correct(kind, p, zeta, ctrl.tol, root, residual))
        throw convergence_error("trace_branch: seed correction failed");
    zeta = root;
    branch.samples.push_back({k, unmap_point(zeta, p).lambda, residual});

    const double edge = ctrl.edgeEps;
    double step = ctrl.initialStep > 0 ? ctrl.initialStep : 0.01 / tau;
    const double stepCap = ctrl.maxStep > 0 ? ctrl.maxStep : 0.1 / tau;
    int successes = 0;
    cplx lambda = branch.samples.back().lambda;

    while (k < kMax) {
        double kNext = std::min(k + step, kMax);
        SpectralParams pn(tau, kNext);
        cplx zNext;
        double resNext;
        bool ok;
        cplx lamPred;
        try {
            lamPred = lambda + lambda_velocity(kind, zeta, p) * (kNext - k);
            cplx pred = map_point(lamPred, pn).zeta;
            ok = correct(kind, pn, pred, ctrl.tol, zNext, resNext);
        } catch (const overflow_error&) {
            ok = false;
        } catch (const domain_error&) {
            ok = false;  // degenerate tangent at this step
        }
        cplx lamNext;
        if (ok) {
            lamNext = unmap_point(zNext, pn).lambda;
            // stay on the branch: the corrector pull beyond the linear
            // predictor is curvature-sized (lambda'' ~ 2 tau at small k),
            // while a branch jump moves by the O(k) inter-branch distance
            double stepLen = std::abs(lamPred - lambda);
            double dk = kNext - k;
            double allow = 0.35 * stepLen + 5.0 * tau * dk * dk + 1e-10 * (1.0 + std::abs(lamPred));
            if (std::abs(lamNext - lamPred) > allow) ok = false;
            if (ok && zNext.imag() >= edge && !kind_character_ok(kind, lamNext))
                ok = false;
        }
        if (!ok) {
            step *= 0.5;
            successes = 0;
            if (step < 1e-8) {
                if (zeta.imag() < 8.0 * edge) break;  // at the essential-spectrum edge
                throw convergence_error("trace_branch: step underflow away from the edge");
            }
            continue;
        }
        if (zNext.imag() < edge) {
            // absorbed between k and kNext: bisect on the sign of Im zeta,
            // following the root through the entire branch of Z
            double lo = k, hi = kNext;
            cplx lamLo = lambda, zLo = zeta;
            for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
                double mid = 0.5 * (lo + hi);
                SpectralParams pm(tau, mid);
                cplx zm;
                double rm;
                bool okm = false;
                try {
                    cplx lamPm = lamLo + lambda_velocity(kind, zLo, SpectralParams(tau, lo)) * (mid - lo);
                    okm = correct(kind, pm, map_point(lamPm, pm).zeta, ctrl.tol, zm, rm);
                } catch (const std::exception&) {
                }
                if (!okm) {
                    hi = mid;
                    continue;
                }
                if (zm.imag() > 0.0) {
                    lo = mid;
                    zLo = zm;
                    lamLo = unmap_point(zm, pm).lambda;
                } else {
                    hi = mid;
                }
            }
            branch.kCritEstimate = 0.5 * (lo + hi);
            break;
        }
        k = kNext;
        p = pn;
        zeta = zNext;
        lambda = lamNext;
        branch.samples.push_back({k, lambda, resNext});
        if (++successes >= 3) {
            step = std::min(2.0 * step, stepCap);
            successes = 0;
        }
    }
    return branch;
}

SpectrumResult spectrum_at(const SpectralParams& p) {
    SpectrumResult result{p, {}, p.essentialLine(), 0};
    if (p.k == 0.0) {
        result.eigenvalues.push_back({cplx(0.0, 0.0), 5, std::nullopt, 0.0});
        result.windingTotal = 5;
        return result;
    }
    const double tk = p.tk();
    const double edgeEps = 1e-4;
    if (1.0 / tk <= 2.0 * edgeEps) {
        // far above every critical wave number; strip is thinner than the
        // contour guard and provably empty (far-field asymptote)
        return result;
    }
    Rectangle rect = strip_rect_zeta(p, edgeEps);

    // work with well-scaled functions: Gamma/(i tk)^3 stays O(1) on the
    // contour for small k (same zeros), likewise (Z - i tk)/tk for shear
    const cplx it3 = (I * tk) * (I * tk) * (I * tk);
    AnalyticFn gammaFn = [&, it3](cplx z) { return gamma(z, p) / it3; };
    AnalyticFn gammaPrime = [&, it3](cplx z) { return gamma_dzeta(z, p) / it3; };
    LocateOptions opt;
    opt.tol = 1e-12;
    std::vector<ZeroReport> gRoots = locate_zeros(gammaFn, &gammaPrime, rect, opt);

    AnalyticFn shearFn = [&](cplx z) { return shear_condition(z, p) / tk; };
    AnalyticFn shearPrime = [&](cplx z) { return plasma_Z_plus_prime(z) / tk; };
    std::vector<ZeroReport> sRoots = locate_zeros(shearFn, &shearPrime, rect, opt);

    for (const ZeroReport& r : sRoots) {
        cplx lam = unmap_point(r.location, p).lambda;
        result.eigenvalues.push_back({lam, 2 * r.multiplicity, ModeKind::Shear, r.residual});
    }
    for (const ZeroReport& r : gRoots) {
        cplx lam = unmap_point(r.location, p).lambda;
        ModeKind kind;
        if (std::abs(lam.imag()) <= 1e-9 * (1.0 + std::abs(lam)))
            kind = ModeKind::Diffusion;
        else
            kind = lam.imag() > 0 ? ModeKind::Acoustic : ModeKind::AcousticConjugate;
        result.eigenvalues.push_back({lam, r.multiplicity, kind, r.residual});
    }

    int sum = 0;
    for (const EigenvalueEntry& e : result.eigenvalues) sum += e.multiplicity;

    // full determinant rescaled to ((Z - i tk)/tk)^2 * Gamma/(i tk)^3: a
    // constant multiple, O(1) on the contour at every tk
    AnalyticFn detFn = [&, it3](cplx zeta) {
        cplx shearNorm = shear_condition(zeta, p) / tk;
        return shearNorm * shearNorm * gamma(zeta, p) / it3;
    };
    int winding = 0;
    for (int attempt = 0; attempt < 6; ++attempt) {
        try {
            Rectangle r2 = rect;
            double d = 1e-6 * (attempt == 0 ? 0.0 : (attempt % 2 ? attempt : -attempt) * 0.5);
            r2.reMin -= d; r2.reMax += d; r2.imMax += d;
            r2.imMin = std::max(rect.imMin * 0.5, rect.imMin - d);
            winding = winding_count(detFn, r2);
            break;
        } catch (const contour_error&) {
            if (attempt == 5) throw;
        }
    }
    result.windingTotal = winding;
    if (winding != sum)
        throw internal_error("spectrum_at: winding total " + std::to_string(winding) +
                             " != located multiplicity sum " + std::to_string(sum));
    std::sort(result.eigenvalues.begin(), result.eigenvalues.end(),
              [](const EigenvalueEntry& a, const EigenvalueEntry& b) {
                  if (a.lambda.real() != b.lambda.real()) return a.lambda.real() > b.lambda.real();
                  return a.lambda.imag() > b.lambda.imag();
              });
    return result;
}

double crit_shear(double tau) {
    if (!(tau > 0)) throw domain_error("crit_shear: tau > 0 required");
    return SQRT_PI_OVER_2 / tau;
}

double crit_diffusion(double tau) {
    if (!(tau > 0)) throw domain_error("crit_diffusion: tau > 0 required");
    const double c = SQRT_PI_OVER_2;
    // 6 x^3 - 11 c x^2 + (6 + 2 pi) x - 5 c, x = tau k
    std::vector<double> coeffs = {-5.0 * c, 6.0 + 2.0 * PI, -11.0 * c, 6.0};
    std::vector<double> roots = real_poly_roots(coeffs);
    if (roots.size() != 1)
        throw internal_error("crit_diffusion: cubic should have exactly one real root");
    return roots[0] / tau;
}

AcousticCritical crit_acoustic(double tau) {
    if (!(tau > 0)) throw domain_error("crit_acoustic: tau > 0 required");
    // solve Gamma_t(x) = 0 over (x real, t = tau k); x < 0 branch
    auto G = [](double x, double t) { return gamma(cplx(x, 0.0), SpectralParams(1.0, t)); };

    // coarse grid seed at the |Gamma| minimum
    double bestX = -1.4, bestT = 1.3, bestVal = 1e300;
    for (int i = 0; i <= 60; ++i) {
        double x = -3.0 + 2.8 * i / 60.0;
        for (int j = 0; j <= 60; ++j) {
            double t = 0.4 + (1.55 - 0.4) * j / 60.0;
            double v = std::abs(G(x, t));
            if (v < bestVal) {
                bestVal = v;
                bestX = x;
                bestT = t;
            }
        }
    }
    double x = bestX, t = bestT;
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
        SpectralParams pt(1.0, t);
        cplx g = G(x, t);
        if (std::abs(g) < 1e-13) {
            converged = true;
            break;
        }
        cplx gx = gamma_dzeta(cplx(x, 0.0), pt);   // d/dx along the real axis
        cplx gt = gamma_dk(cplx(x, 0.0), pt);      // tau=1: d/dt
        // 2x2 real Newton on (Re G, Im G)
        double a = gx.real(), b = gt.real();
        double c = gx.imag(), d = gt.imag();
        double det = a * d - b * c;
        if (std::abs(det) < 1e-16)
            throw convergence_error("crit_acoustic: singular Jacobian");
        double dx = (d * g.real() - b * g.imag()) / det;
        double dt = (-c * g.real() + a * g.imag()) / det;
        x -= dx;
        t -= dt;
        if (std::abs(dx) + std::abs(dt) < 1e-14) {
            converged = true;
            break;
        }
    }
    if (!converged || !(t > 0))
        throw convergence_error("crit_acoustic: Newton did not converge from grid seeds");
    if (x > 0) x = -x;  // mirror root; keep the Im lambda > 0 merge point
    return {t / tau, x};
}

}  // namespace bgk
