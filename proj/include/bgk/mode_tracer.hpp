#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bgk/spectral_function.hpp"

namespace bgk {

enum class ModeKind { Shear, Diffusion, Acoustic, AcousticConjugate };

const char* mode_name(ModeKind kind);

struct BranchSample {
    double k;
    cplx lambda;
    double residual;  // |defining equation| at the accepted root
};

struct ModeBranch {
    ModeKind kind;
    std::vector<BranchSample> samples;          // k strictly increasing
    std::optional<double> kCritEstimate;        // set when absorbed below kMax
};

struct EigenvalueEntry {
    cplx lambda;
    int multiplicity;
    std::optional<ModeKind> kind;  // empty for the k = 0 degenerate origin
    double residual;
};

struct SpectrumResult {
    SpectralParams params;
    std::vector<EigenvalueEntry> eigenvalues;  // closed under conjugation
    double essentialLine;                      // -1/tau
    int windingTotal;                          // = sum of multiplicities
};

struct TraceControl {
    double tol = 1e-12;       // corrector residual target
    double edgeEps = 1e-4;    // Im zeta absorption threshold
    double initialStep = 0.0; // 0 -> 0.01/tau
    double maxStep = 0.0;     // 0 -> 0.1/tau
};

/// Chapman-Enskog seeds, valid for k <= 0.1/tau:
/// lambda_diff = lambda_shear = -tau k^2, lambda_ac = i sqrt(5/3) k - tau k^2.
std::vector<std::pair<ModeKind, cplx>> seed_modes(const SpectralParams& p);

/// Tangent of a Gamma-root: d(zeta)/dk = -(dGamma/dk)/(dGamma/dzeta).
cplx branch_derivative(cplx zeta, const SpectralParams& p);

/// Predictor-corrector continuation of one mode from p0.k up to kMax.
/// Terminates early when the root's Im zeta drops below ctrl.edgeEps and
/// records kCritEstimate by bisection on the sign of Im zeta.
ModeBranch trace_branch(ModeKind kind, const SpectralParams& p0, double kMax,
                        const TraceControl& ctrl = {});

/// Discrete spectrum at fixed (tau, k): Gamma roots + shear-condition roots
/// over the strip rectangle, kinds assigned, total cross-checked against the
/// full-determinant winding count. Throws internal_error on mismatch.
SpectrumResult spectrum_at(const SpectralParams& p);

/// Critical wave numbers. Shear is closed-form sqrt(pi/2)/tau; diffusion is
/// the real root of the printed cubic divided by tau; acoustic solves the
/// 2x2 system Re Gamma_tk(x) = Im Gamma_tk(x) = 0 over (x, tk).
double crit_shear(double tau);
double crit_diffusion(double tau);

struct AcousticCritical {
    double kCrit;
    double xMerge;  // lambda_merge = -1/tau - i k x, x < 0 root (Im lambda > 0)
};
AcousticCritical crit_acoustic(double tau);

}  // namespace bgk
