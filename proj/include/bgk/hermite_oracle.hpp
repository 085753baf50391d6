#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bgk/mode_tracer.hpp"
#include "bgk/spectral_function.hpp"

namespace bgk {

enum class Sector { Longitudinal, Shear };

/// Hermite-truncated per-k operator A = -i k T - (1/tau)(I - P) in an
/// orthonormal basis. Longitudinal keeps two coupled chains
/// {hhat_n(w1) x 1} + {hhat_n(w1) x q}, q = (w2^2 + w3^2 - 2)/2, dim = 2N,
/// with P of rank 3; Shear is a single chain with P of rank 1.
struct TruncatedMatrix {
    Sector sector;
    int chainLength;                 // N
    double tau, k;
    Eigen::MatrixXcd entries;        // dense form (dim x dim)
    Eigen::MatrixXd projector;       // orthonormal columns spanning range(P)
    std::vector<double> offDiag;     // sqrt(n+1) chain couplings (length N-1)

    int dim() const { return static_cast<int>(entries.rows()); }
};

TruncatedMatrix build_longitudinal_matrix(const SpectralParams& p, int N);
TruncatedMatrix build_shear_matrix(const SpectralParams& p, int N);

/// det(A - lambda I)/det(A - lambdaRef I), lambdaRef = -1/tau + 1 + i,
/// via tridiagonal LU plus a rank-3 (rank-1) determinant-lemma factor.
cplx truncated_determinant(const TruncatedMatrix& A, cplx lambda);

/// Same ratio through a dense Eigen LU (cross-check path, O(dim^3)).
cplx truncated_determinant_dense(const TruncatedMatrix& A, cplx lambda);

/// Finite-dimensional Weinstein-Aronszajn determinant
/// det(A - lambda I)/det(B - lambda I) = det(I_r + (1/tau) V^T (B - lambda)^-1 V),
/// B = -i k T - (1/tau) I. Same zeros as det(A - lambda I) away from the
/// essential-line images, but O(1)-scaled on large contours, so the winding
/// machinery can use it over the whole search rectangle.
cplx weinstein_determinant(const TruncatedMatrix& A, cplx lambda);

struct OracleOptions {
    double locateTol = 1e-9;
    double imHalfWidthFactor = 3.0;  // Im lambda in [-f*k, f*k]
    bool stabilityFilter = true;     // match against an N/2 run
};

/// Hydrodynamic eigenvalue approximations: locate_zeros on the truncated
/// determinant over Re lambda in (-1/tau + deltaN, 0.05],
/// deltaN = max(0.02, 0.75/sqrt(N))/tau, both sectors, then keep only
/// N-stable roots (present in an N/2 run within 0.02/tau). The filter
/// removes finite-N images of the essential spectrum. True modes move by
/// less than ~3e-3/tau between N/2 and N; surviving artifacts by ~0.1/tau.
std::vector<cplx> oracle_spectrum(const SpectralParams& p, int N,
                                  const OracleOptions& opt = {});

/// Eigenvector by inverse iteration at shift mu + 1e-8.
Eigen::VectorXcd inverse_iteration(const TruncatedMatrix& A, cplx mu, int iters = 3);

struct DecayFit {
    cplx rate;             // fitted complex decay rate
    double fitResidual;    // rms of the linear fit
    bool normNonIncreasing;
};

/// Integrates df/dt = A f with classical RK4 from an eigenvector-aligned
/// initial state, fits log-amplitude + unwrapped phase of the tracked moment
/// over the second half of the run.
DecayFit decay_simulation(const SpectralParams& p, int N, ModeKind mode,
                          double tEnd, double dt);

}  // namespace bgk
