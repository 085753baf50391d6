#include "bgk/hermite_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "bgk/errors.hpp"

namespace bgk {
namespace {

// Tridiagonal LU with partial pivoting (one fill-in superdiagonal).
// Diagonal d, symmetric off-diagonal e. Keeps pivots for determinant ratios.
struct TriLU {
    std::vector<cplx> du0, du1, du2;  // U diagonals
    std::vector<int> pivRow;          // 1 when rows i, i+1 swapped
    int parity = 0;

    void factor(std::vector<cplx> d, std::vector<cplx> e) {
        const size_t n = d.size();
        du0.assign(n, 0.0);
        du1.assign(n, 0.0);
        du2.assign(n, 0.0);
        pivRow.assign(n, 0);
        lower.assign(n, 0.0);
        std::vector<cplx> sub = e;  // subdiagonal copy mutated in place
        for (size_t i = 0; i < n; ++i) du0[i] = d[i];
        for (size_t i = 0; i + 1 < n; ++i) du1[i] = e[i];
        parity = 0;
        for (size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(sub[i]) > std::abs(du0[i])) {
                std::swap(du0[i], sub[i]);
                std::swap(du1[i], du0[i + 1]);
                // row i+1 had no (i+2) entry before the swap; row i gains one
                du2[i] = (i + 2 < n) ? du1[i + 1] : cplx(0.0);
                if (i + 2 < n) du1[i + 1] = 0.0;
                pivRow[i] = 1;
                parity ^= 1;
            } else {
                du2[i] = 0.0;
            }
            cplx m = sub[i] / du0[i];
            lower[i] = m;
            du0[i + 1] -= m * du1[i];
            if (i + 2 < n) du1[i + 1] -= m * du2[i];
        }
    }

    // solve L U x = P b
    void solve(std::vector<cplx>& b) const {
        const size_t n = du0.size();
        for (size_t i = 0; i + 1 < n; ++i) {
            if (pivRow[i]) std::swap(b[i], b[i + 1]);
            b[i + 1] -= lower[i] * b[i];
        }
        for (size_t i = n; i-- > 0;) {
            cplx v = b[i];
            if (i + 1 < n) v -= du1[i] * b[i + 1];
            if (i + 2 < n) v -= du2[i] * b[i + 2];
            b[i] = v / du0[i];
        }
    }

    std::vector<cplx> lower;
};

std::vector<double> chain_couplings(int N) {
    std::vector<double> e(static_cast<size_t>(N - 1));
    for (int n = 0; n + 1 < N; ++n) e[static_cast<size_t>(n)] = std::sqrt(n + 1.0);
    return e;
}

Eigen::MatrixXcd dense_chain(int N) {
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N, N);
    for (int n = 0; n + 1 < N; ++n) {
        double c = std::sqrt(n + 1.0);
        T(n, n + 1) = c;
        T(n + 1, n) = c;
    }
    return T;
}

cplx small_det(const Eigen::MatrixXcd& m) {
    if (m.rows() == 1) return m(0, 0);
    if (m.rows() == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

cplx lambda_ref(const TruncatedMatrix& A) { return cplx(-1.0 / A.tau + 1.0, 1.0); }

// chain-block factorizations of B = -i k T - (1/tau + lambda) I; the
// longitudinal blocks are identical, so one factorization serves both
void factor_blocks(const TruncatedMatrix& A, cplx lambda, std::vector<TriLU>& lus) {
    const int N = A.chainLength;
    const cplx shift = -(1.0 / A.tau + lambda);
    const cplx ik = -I * A.k;
    const int blocks = (A.sector == Sector::Longitudinal) ? 2 : 1;
    std::vector<cplx> d(static_cast<size_t>(N), shift);
    std::vector<cplx> e(static_cast<size_t>(N - 1));
    for (int n = 0; n + 1 < N; ++n) e[static_cast<size_t>(n)] = ik * A.offDiag[static_cast<size_t>(n)];
    lus.assign(static_cast<size_t>(blocks), TriLU{});
    lus[0].factor(d, e);
    if (blocks == 2) lus[1] = lus[0];
}

cplx schur_factor(const TruncatedMatrix& A, const std::vector<TriLU>& lus) {
    const int N = A.chainLength;
    const int r = static_cast<int>(A.projector.cols());
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Identity(r, r);
    for (int j = 0; j < r; ++j) {
        // solve B x = v_j blockwise
        std::vector<cplx> x(static_cast<size_t>(A.dim()));
        for (int i = 0; i < A.dim(); ++i) x[static_cast<size_t>(i)] = A.projector(i, j);
        const int blocks = static_cast<int>(lus.size());
        for (int b = 0; b < blocks; ++b) {
            std::vector<cplx> rhs(x.begin() + b * N, x.begin() + (b + 1) * N);
            lus[static_cast<size_t>(b)].solve(rhs);
            std::copy(rhs.begin(), rhs.end(), x.begin() + b * N);
        }
        for (int i = 0; i < r; ++i) {
            cplx dot = 0.0;
            for (int m = 0; m < A.dim(); ++m) dot += A.projector(m, i) * x[static_cast<size_t>(m)];
            S(i, j) += dot / A.tau;
        }
    }
    return small_det(S);
}

TruncatedMatrix assemble(Sector sector, const SpectralParams& p, int N) {
    if (N < 8) throw domain_error("hermite oracle: N >= 8 required");
    TruncatedMatrix A;
    A.sector = sector;
    A.chainLength = N;
    A.tau = p.tau;
    A.k = p.k;
    A.offDiag = chain_couplings(N);
    const int dim = (sector == Sector::Longitudinal) ? 2 * N : N;
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(dim, dim);
    T.topLeftCorner(N, N) = dense_chain(N);
    if (sector == Sector::Longitudinal) T.bottomRightCorner(N, N) = dense_chain(N);

    const int r = (sector == Sector::Longitudinal) ? 3 : 1;
    A.projector = Eigen::MatrixXd::Zero(dim, r);
    if (sector == Sector::Longitudinal) {
        A.projector(0, 0) = 1.0;                      // e0 = hhat0 x 1
        A.projector(1, 1) = 1.0;                      // e1 = hhat1 x 1
        A.projector(2, 2) = std::sqrt(2.0 / 6.0);     // e4 = (sqrt2 hhat2 x 1 + 2 hhat0 x q)/sqrt6
        A.projector(N, 2) = 2.0 / std::sqrt(6.0);
    } else {
        A.projector(0, 0) = 1.0;                      // e2 reduces to hhat0 after the rotation
    }
    Eigen::MatrixXd P = A.projector * A.projector.transpose();
    A.entries = -I * p.k * T -
                (1.0 / p.tau) * (Eigen::MatrixXcd::Identity(dim, dim) - P.cast<cplx>());
    return A;
}

}  // namespace

TruncatedMatrix build_longitudinal_matrix(const SpectralParams& p, int N) {
    return assemble(Sector::Longitudinal, p, N);
}

TruncatedMatrix build_shear_matrix(const SpectralParams& p, int N) {
    return assemble(Sector::Shear, p, N);
}

cplx truncated_determinant(const TruncatedMatrix& A, cplx lambda) {
    if (A.dim() > 4096) throw domain_error("truncated_determinant: dim <= 4096 required");
    const cplx lref = lambda_ref(A);
    std::vector<TriLU> luL, luR;
    factor_blocks(A, lambda, luL);
    factor_blocks(A, lref, luR);
    cplx ratio = 1.0;
    int parity = 0;
    for (size_t b = 0; b < luL.size(); ++b) {
        const TriLU& L = luL[b];
        const TriLU& R = luR[b];
        for (size_t i = 0; i < L.du0.size(); ++i) ratio *= L.du0[i] / R.du0[i];
        parity ^= L.parity ^ R.parity;
    }
    if (parity) ratio = -ratio;
    cplx s = schur_factor(A, luL) / schur_factor(A, luR);
    return ratio * s;
}

cplx truncated_determinant_dense(const TruncatedMatrix& A, cplx lambda) {
    const int dim = A.dim();
    Eigen::MatrixXcd M1 = A.entries - lambda * Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd M2 = A.entries - lambda_ref(A) * Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu1(M1), lu2(M2);
    // pair the pivots so neither product overflows on its own
    cplx ratio = 1.0;
    for (int i = 0; i < dim; ++i) ratio *= lu1.matrixLU()(i, i) / lu2.matrixLU()(i, i);
    int parity = 0;
    auto perm1 = lu1.permutationP().indices();
    auto perm2 = lu2.permutationP().indices();
    auto sign_of = [](const auto& idx) {
        int n = static_cast<int>(idx.size());
        std::vector<bool> seen(static_cast<size_t>(n), false);
        int par = 0;
        for (int i = 0; i < n; ++i) {
            if (seen[static_cast<size_t>(i)]) continue;
            int len = 0, j = i;
            while (!seen[static_cast<size_t>(j)]) {
                seen[static_cast<size_t>(j)] = true;
                j = idx[j];
                ++len;
            }
            par ^= (len - 1) & 1;
        }
        return par;
    };
    parity = sign_of(perm1) ^ sign_of(perm2);
    return parity ? -ratio : ratio;
}

cplx weinstein_determinant(const TruncatedMatrix& A, cplx lambda) {
    std::vector<TriLU> lus;
    factor_blocks(A, lambda, lus);
    return schur_factor(A, lus);
}

namespace {

std::vector<cplx> locate_sector(const TruncatedMatrix& A, const Rectangle& rect,
                                double tol) {
    // the full determinant ratio swings over hundreds of orders of magnitude
    // along a rectangle this size; the Weinstein-Aronszajn form stays O(1)
    AnalyticFn f = [&A](cplx lam) { return weinstein_determinant(A, lam); };
    LocateOptions opt;
    opt.tol = tol;
    opt.samplesPerEdge = 48;
    std::vector<cplx> out;
    for (const ZeroReport& r : locate_zeros(f, nullptr, rect, opt))
        for (int m = 0; m < r.multiplicity; ++m) out.push_back(r.location);
    return out;
}

std::vector<cplx> oracle_run(const SpectralParams& p, int N, const OracleOptions& opt) {
    const double tau = p.tau;
    const double delta = std::max(0.02, 0.75 / std::sqrt(static_cast<double>(N))) / tau;
    const double imHalf = std::max(opt.imHalfWidthFactor * p.k, 0.2);
    Rectangle rect{-1.0 / tau + delta, 0.05, -imHalf, imHalf};
    std::vector<cplx> roots;
    for (Sector s : {Sector::Longitudinal, Sector::Shear}) {
        TruncatedMatrix A = (s == Sector::Longitudinal) ? build_longitudinal_matrix(p, N)
                                                        : build_shear_matrix(p, N);
        std::vector<cplx> found = locate_sector(A, rect, opt.locateTol);
        roots.insert(roots.end(), found.begin(), found.end());
    }
    return roots;
}

}  // namespace

std::vector<cplx> oracle_spectrum(const SpectralParams& p, int N, const OracleOptions& opt) {
    if (!(p.k > 0.0)) throw domain_error("oracle_spectrum: k > 0 required");
    if (N < 32) throw domain_error("oracle_spectrum: N >= 32 required");
    std::vector<cplx> atN = oracle_run(p, N, opt);
    if (!opt.stabilityFilter) return atN;
    // finite-N images of the essential spectrum drift with N; genuine
    // discrete eigenvalues are N-stable
    std::vector<cplx> atHalf = oracle_run(p, N / 2, opt);
    const double matchTol = 0.02 / p.tau;
    std::vector<cplx> stable;
    for (cplx lam : atN) {
        for (cplx ref : atHalf) {
            if (std::abs(lam - ref) <= matchTol) {
                stable.push_back(lam);
                break;
            }
        }
    }
    return stable;
}

Eigen::VectorXcd inverse_iteration(const TruncatedMatrix& A, cplx mu, int iters) {
    const int dim = A.dim();
    Eigen::MatrixXcd M = A.entries - (mu + cplx(1e-8, 0.0)) * Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(dim);
    v.normalize();
    for (int i = 0; i < iters; ++i) {
        v = lu.solve(v);
        v.normalize();
    }
    return v;
}

DecayFit decay_simulation(const SpectralParams& p, int N, ModeKind mode,
                          double tEnd, double dt) {
    if (!(dt > 0.0) || dt > 0.1 * p.tau)
        throw domain_error("decay_simulation: dt <= 0.1 tau required");
    if (tEnd < 20.0 * dt) throw domain_error("decay_simulation: tEnd >= 20 dt required");

    const Sector sector = (mode == ModeKind::Shear) ? Sector::Shear : Sector::Longitudinal;
    TruncatedMatrix A = (sector == Sector::Shear) ? build_shear_matrix(p, N)
                                                  : build_longitudinal_matrix(p, N);
    Eigen::VectorXcd f0;
    if (p.k == 0.0) {
        f0 = A.projector.col(0).cast<cplx>();
    } else {
        // oracle eigenvalue of the requested kind, from this sector alone
        const double tau = p.tau;
        const double delta = std::max(0.02, 0.75 / std::sqrt(static_cast<double>(N))) / tau;
        Rectangle rect{-1.0 / tau + delta, 0.05, -std::max(3.0 * p.k, 0.2),
                       std::max(3.0 * p.k, 0.2)};
        std::vector<cplx> cands = locate_sector(A, rect, 1e-9);
        std::optional<cplx> mu;
        for (cplx lam : cands) {
            bool real = std::abs(lam.imag()) < 1e-8;
            if (mode == ModeKind::Shear && real) mu = lam;
            if (mode == ModeKind::Diffusion && real) mu = lam;
            if (mode == ModeKind::Acoustic && lam.imag() > 1e-8)
                mu = (!mu || lam.real() > mu->real()) ? lam : mu;
            if (mode == ModeKind::AcousticConjugate && lam.imag() < -1e-8)
                mu = (!mu || lam.real() > mu->real()) ? lam : mu;
        }
        if (!mu) throw convergence_error("decay_simulation: requested mode not present");
        f0 = inverse_iteration(A, *mu);
    }

    const int steps = static_cast<int>(std::lround(tEnd / dt));
    Eigen::VectorXcd f = f0;
    std::vector<double> times;
    std::vector<cplx> moment;
    bool nonIncreasing = true;
    double prevNorm = f.norm();
    auto tracked = [&](const Eigen::VectorXcd& v) -> cplx { return v(0); };
    times.push_back(0.0);
    moment.push_back(tracked(f));
    for (int s = 1; s <= steps; ++s) {
        Eigen::VectorXcd k1 = A.entries * f;
        Eigen::VectorXcd k2 = A.entries * (f + 0.5 * dt * k1);
        Eigen::VectorXcd k3 = A.entries * (f + 0.5 * dt * k2);
        Eigen::VectorXcd k4 = A.entries * (f + dt * k3);
        f += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        double n = f.norm();
        if (n > prevNorm * (1.0 + 1e-9) + 1e-9) nonIncreasing = false;
        if (!std::isfinite(n) || n > 1e6)
            throw convergence_error("decay_simulation: unstable integration (dt too large)");
        prevNorm = n;
        times.push_back(s * dt);
        moment.push_back(tracked(f));
    }

    // fit log amplitude + unwrapped phase over the second half
    const size_t start = times.size() / 2;
    std::vector<double> t, logAbs, phase;
    double prevArg = 0.0, offset = 0.0;
    for (size_t i = start; i < times.size(); ++i) {
        double a = std::abs(moment[i]);
        if (a < 1e-280) break;
        double ph = std::arg(moment[i]);
        if (i > start) {
            while (ph + offset - prevArg > PI) offset -= 2.0 * PI;
            while (ph + offset - prevArg < -PI) offset += 2.0 * PI;
        }
        prevArg = ph + offset;
        t.push_back(times[i]);
        logAbs.push_back(std::log(a));
        phase.push_back(prevArg);
    }
    if (t.size() < 8) throw convergence_error("decay_simulation: degenerate fit (moment decayed)");
    auto linfit = [&](const std::vector<double>& y, double& slope) {
        double n = static_cast<double>(t.size());
        double st = 0, sy = 0, stt = 0, sty = 0;
        for (size_t i = 0; i < t.size(); ++i) {
            st += t[i]; sy += y[i]; stt += t[i] * t[i]; sty += t[i] * y[i];
        }
        double denom = n * stt - st * st;
        if (std::abs(denom) < 1e-30) throw convergence_error("decay_simulation: degenerate fit");
        slope = (n * sty - st * sy) / denom;
        double a0 = (sy - slope * st) / n;
        double rms = 0.0;
        for (size_t i = 0; i < t.size(); ++i) {
            double r = y[i] - (a0 + slope * t[i]);
            rms += r * r;
        }
        return std::sqrt(rms / n);
    };
    double reRate, imRate;
    double res1 = linfit(logAbs, reRate);
    double res2 = linfit(phase, imRate);
    return {cplx(reRate, imRate), std::max(res1, res2), nonIncreasing};
}

}  // namespace bgk
