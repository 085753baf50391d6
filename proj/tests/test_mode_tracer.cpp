#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bgk/errors.hpp"
#include "bgk/mode_tracer.hpp"

using namespace bgk;

namespace {

// transcendental branch values at (tau, k) = (1, 0.5), frozen from a
// 40-digit run of the dispersion relations
const cplx LAM_SHEAR_1_05(-0.2140711558114529355, 0.0);
const cplx LAM_DIFF_1_05(-0.19947482344882353915, 0.0);
const cplx LAM_AC_1_05(-0.20622358862455459131, 0.66348064227916490988);

const EigenvalueEntry* find_kind(const SpectrumResult& r, ModeKind kind) {
    for (const EigenvalueEntry& e : r.eigenvalues)
        if (e.kind == kind) return &e;
    return nullptr;
}

}  // namespace

TEST_CASE("seed_modes values and guard") {
    SpectralParams p(1.0, 0.01);
    auto seeds = seed_modes(p);
    REQUIRE(seeds.size() == 4);
    for (auto& [kind, lam] : seeds) {
        if (kind == ModeKind::Diffusion) CHECK(lam == cplx(-1e-4, 0.0));
        if (kind == ModeKind::Acoustic)
            CHECK(lam.imag() == doctest::Approx(0.012909944487358056).epsilon(1e-12));
    }
    auto zero = seed_modes(SpectralParams(1.0, 0.0));
    for (auto& [kind, lam] : zero) CHECK(lam == cplx(0.0, 0.0));
    CHECK_THROWS_AS(seed_modes(SpectralParams(1.0, 0.2)), domain_error);
}

TEST_CASE("branch_derivative: finite differences and conjugation") {
    SpectralParams p(1.0, 0.5);
    // point on the diffusion branch
    SpectrumResult r = spectrum_at(p);
    const EigenvalueEntry* diff = find_kind(r, ModeKind::Diffusion);
    REQUIRE(diff != nullptr);
    cplx zeta = map_point(diff->lambda, p).zeta;

    cplx tangent = branch_derivative(zeta, p);
    // finite-difference tangent: root of Gamma at k +- h, Newton-corrected
    double h = 1e-5;
    auto root_near = [&](double k, cplx guess) {
        SpectralParams pk(p.tau, k);
        cplx z = guess;
        for (int i = 0; i < 30; ++i) z -= gamma(z, pk) / gamma_dzeta(z, pk);
        return z;
    };
    cplx zp = root_near(p.k + h, zeta);
    cplx zm = root_near(p.k - h, zeta);
    CHECK(std::abs(tangent - (zp - zm) / (2.0 * h)) <= 1e-6);

    // conjugate branch tangent is minus the conjugate in the zeta plane
    // (zeta -> -zeta* maps the acoustic root to its partner)
    const EigenvalueEntry* ac = find_kind(r, ModeKind::Acoustic);
    REQUIRE(ac != nullptr);
    cplx zac = map_point(ac->lambda, p).zeta;
    cplx t1 = branch_derivative(zac, p);
    cplx t2 = branch_derivative(-std::conj(zac), p);
    CHECK(std::abs(t2 + std::conj(t1)) <= 1e-10);
}

TEST_CASE("trace_branch: shear terminal point hits the closed form") {
    const double tau = 0.5;
    ModeBranch b = trace_branch(ModeKind::Shear, SpectralParams(tau, 0.01 / tau),
                                1.2 * crit_shear(tau));
    REQUIRE(b.kCritEstimate.has_value());
    CHECK(std::abs(*b.kCritEstimate - SQRT_PI_OVER_2 / tau) <= 1e-6);
    for (const BranchSample& s : b.samples) {
        CHECK(std::abs(s.lambda.imag()) <= 1e-10);
        CHECK(s.lambda.real() > -1.0 / tau);
        CHECK(s.lambda.real() <= 0.0);
        CHECK(s.residual <= 1e-11);
    }
    for (size_t i = 1; i < b.samples.size(); ++i)
        CHECK(b.samples[i].k > b.samples[i - 1].k);
}

TEST_CASE("trace_branch: diffusion critical estimate matches the cubic") {
    const double tau = 0.5;
    ModeBranch b = trace_branch(ModeKind::Diffusion, SpectralParams(tau, 0.01 / tau),
                                1.2 * crit_diffusion(tau));
    REQUIRE(b.kCritEstimate.has_value());
    CHECK(std::abs(*b.kCritEstimate - 2.7120669109546558) <= 1e-4);
    // endpoint approaches the essential line
    CHECK(b.samples.back().lambda.real() < -0.85 / tau);
}

TEST_CASE("trace_branch: acoustic stays off the real axis, matches the seed at small k") {
    const double tau = 0.5;
    ModeBranch b = trace_branch(ModeKind::Acoustic, SpectralParams(tau, 0.01),
                                1.1 * crit_acoustic(tau).kCrit);
    REQUIRE(b.kCritEstimate.has_value());
    CHECK(std::abs(*b.kCritEstimate - crit_acoustic(tau).kCrit) <= 1e-4);
    for (const BranchSample& s : b.samples) CHECK(s.lambda.imag() > 0.0);
    const BranchSample& first = b.samples.front();
    CHECK(first.k == doctest::Approx(0.01));
    cplx seed = cplx(-tau * first.k * first.k, std::sqrt(5.0 / 3.0) * first.k);
    CHECK(std::abs(first.lambda - seed) <= 5e-6);
}

TEST_CASE("trace_branch precondition errors") {
    CHECK_THROWS_AS(trace_branch(ModeKind::Shear, SpectralParams(1.0, 0.01), 0.005), domain_error);
    TraceControl tooFine;
    tooFine.tol = 1e-14;
    CHECK_THROWS_AS(trace_branch(ModeKind::Shear, SpectralParams(1.0, 0.01), 1.0, tooFine),
                    domain_error);
    CHECK_THROWS_AS(trace_branch(ModeKind::Shear, SpectralParams(1.0, 0.5), 1.0), domain_error);
}

TEST_CASE("spectrum_at: k = 0 degenerate origin") {
    SpectrumResult r = spectrum_at(SpectralParams(1.0, 0.0));
    REQUIRE(r.eigenvalues.size() == 1);
    CHECK(r.eigenvalues[0].lambda == cplx(0.0, 0.0));
    CHECK(r.eigenvalues[0].multiplicity == 5);
    CHECK_FALSE(r.eigenvalues[0].kind.has_value());
    CHECK(r.windingTotal == 5);
    CHECK(r.essentialLine == -1.0);
}

TEST_CASE("spectrum_at: tau=0.5, k=1 reproduces the four modes with winding 5") {
    SpectrumResult r = spectrum_at(SpectralParams(0.5, 1.0));
    CHECK(r.windingTotal == 5);
    REQUIRE(r.eigenvalues.size() == 4);
    const EigenvalueEntry* shear = find_kind(r, ModeKind::Shear);
    const EigenvalueEntry* diff = find_kind(r, ModeKind::Diffusion);
    const EigenvalueEntry* ac = find_kind(r, ModeKind::Acoustic);
    const EigenvalueEntry* acc = find_kind(r, ModeKind::AcousticConjugate);
    REQUIRE(shear);
    REQUIRE(diff);
    REQUIRE(ac);
    REQUIRE(acc);
    CHECK(shear->multiplicity == 2);
    // tau-scaled values: tau lambda at fixed tk matches the (1, 0.5) table
    CHECK(std::abs(0.5 * shear->lambda - LAM_SHEAR_1_05) <= 1e-10);
    CHECK(std::abs(0.5 * diff->lambda - LAM_DIFF_1_05) <= 1e-10);
    CHECK(std::abs(0.5 * ac->lambda - LAM_AC_1_05) <= 1e-10);
    CHECK(std::abs(acc->lambda - std::conj(ac->lambda)) <= 1e-10);
}

TEST_CASE("spectrum_at: empty above the critical wave numbers") {
    for (double k : {std::sqrt(8.0), 3.0}) {
        SpectrumResult r = spectrum_at(SpectralParams(0.5, k));
        CHECK(r.windingTotal == 0);
        CHECK(r.eigenvalues.empty());
    }
}

TEST_CASE("critical wave numbers: reference digits, scaling, ordering") {
    CHECK(crit_shear(1.0) == doctest::Approx(1.25331).epsilon(1e-5));
    CHECK(std::abs(crit_shear(1.0) - SQRT_PI_OVER_2) <= 1e-15);
    CHECK(crit_shear(2.0) == doctest::Approx(0.6266570686577501).epsilon(1e-12));
    CHECK(crit_diffusion(1.0) == doctest::Approx(1.35603).epsilon(1e-5));
    CHECK(crit_diffusion(0.5) == doctest::Approx(2.71206).epsilon(1e-4));

    AcousticCritical ac1 = crit_acoustic(1.0);
    CHECK(ac1.kCrit == doctest::Approx(1.31176).epsilon(1e-5));
    CHECK(ac1.kCrit == doctest::Approx(1.3117611516279714).epsilon(1e-9));
    CHECK(ac1.xMerge == doctest::Approx(-1.3696583824913179).epsilon(1e-9));
    AcousticCritical ac2 = crit_acoustic(2.0);
    CHECK(ac2.kCrit == doctest::Approx(0.65588).epsilon(1e-4));

    CHECK(crit_shear(1.0) < ac1.kCrit);
    CHECK(ac1.kCrit < crit_diffusion(1.0));
}

TEST_CASE("acoustic-conjugate trace consistent with the 2x2 solve") {
    const double tau = 0.5;
    ModeBranch b = trace_branch(ModeKind::AcousticConjugate, SpectralParams(tau, 0.01),
                                1.1 * crit_acoustic(tau).kCrit);
    REQUIRE(b.kCritEstimate.has_value());
    CHECK(std::abs(*b.kCritEstimate - crit_acoustic(tau).kCrit) <= 1e-4);
    for (const BranchSample& s : b.samples) CHECK(s.lambda.imag() < 0.0);
}
