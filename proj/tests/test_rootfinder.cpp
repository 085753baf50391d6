#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bgk/errors.hpp"
#include "bgk/complex_special.hpp"
#include "bgk/mode_tracer.hpp"
#include "bgk/rootfinder.hpp"
#include "bgk/spectral_function.hpp"

using namespace bgk;

TEST_CASE("winding_count basics") {
    AnalyticFn ident = [](cplx z) { return z; };
    CHECK(winding_count(ident, {-0.5, 0.5, -0.5, 0.5}) == 1);
    CHECK(winding_count(ident, {1.0, 2.0, 1.0, 2.0}) == 0);

    AnalyticFn cubic = [](cplx z) { return z * z * (z - cplx(0.2, 0.1)); };
    CHECK(winding_count(cubic, {-1.0, 1.0, -1.0, 1.0}) == 3);

    CHECK_THROWS_AS(winding_count(ident, {-1e-12, 1e-12, -1e-12, 1e-12}), contour_error);
}

TEST_CASE("winding_count split additivity over random splits") {
    AnalyticFn f = [](cplx z) { return (z - cplx(0.3, 0.4)) * (z + cplx(0.5, 0.2)) * (z - cplx(-0.1, -0.6)); };
    Rectangle whole{-1.0, 1.0, -1.0, 1.0};
    int total = winding_count(f, whole);
    CHECK(total == 3);
    std::mt19937 gen(77u);
    std::uniform_real_distribution<double> us(-0.9, 0.9);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        double s = us(gen);
        bool vertical = trial % 2 == 0;
        Rectangle a = whole, b = whole;
        if (vertical) {
            a.reMax = s;
            b.reMin = s;
        } else {
            a.imMax = s;
            b.imMin = s;
        }
        try {
            int ca = winding_count(f, a);
            int cb = winding_count(f, b);
            CHECK(ca + cb == total);
            ++checked;
        } catch (const contour_error&) {
            // split grazed a zero; the property only claims additivity when
            // all three contours pass the proximity check
        }
    }
    CHECK(checked >= 40);
}

TEST_CASE("full determinant winding over the strip rectangle") {
    // tau = 0.5: five zeros below the critical wave numbers, none above
    SpectralParams p1(0.5, 1.0);
    AnalyticFn det1 = [&](cplx zeta) { return full_determinant(I * p1.tk() * zeta, p1); };
    CHECK(winding_count(det1, strip_rect_zeta(p1)) == 5);

    SpectralParams p3(0.5, 3.0);
    AnalyticFn det3 = [&](cplx zeta) { return full_determinant(I * p3.tk() * zeta, p3); };
    CHECK(winding_count(det3, strip_rect_zeta(p3)) == 0);
}

TEST_CASE("locate_zeros on an explicit quadratic") {
    AnalyticFn f = [](cplx z) { return z * z - cplx(1.0, 1.0); };
    AnalyticFn fp = [](cplx z) { return 2.0 * z; };
    auto roots = locate_zeros(f, &fp, {-2.0, 2.0, -2.0, 2.0});
    REQUIRE(roots.size() == 2);
    cplx want(1.0986841134678100, 0.45508986056222733);  // sqrt(1+i)
    for (const ZeroReport& r : roots) {
        CHECK(r.multiplicity == 1);
        CHECK(r.residual <= 1e-12);
        CHECK(std::min(std::abs(r.location - want), std::abs(r.location + want)) <= 1e-11);
    }
}

TEST_CASE("locate_zeros reports a double zero as a multiplicity-2 cluster") {
    AnalyticFn f = [](cplx z) { return (z - cplx(0.25, 0.1)) * (z - cplx(0.25, 0.1)) * (z + 1.0); };
    auto roots = locate_zeros(f, nullptr, {-2.0, 2.0, -2.0, 2.0});
    int total = 0;
    bool sawDouble = false;
    for (const ZeroReport& r : roots) {
        total += r.multiplicity;
        if (r.multiplicity == 2) {
            sawDouble = true;
            CHECK(std::abs(r.location - cplx(0.25, 0.1)) <= 1e-5);
        }
    }
    CHECK(total == 3);
    CHECK(sawDouble);
}

TEST_CASE("locate_zeros on Gamma finds the three hydrodynamic roots") {
    SpectralParams p(0.5, 1.0);
    const cplx it3 = std::pow(I * p.tk(), 3);
    AnalyticFn f = [&](cplx z) { return gamma(z, p) / it3; };
    AnalyticFn fp = [&](cplx z) { return gamma_dzeta(z, p) / it3; };
    auto roots = locate_zeros(f, &fp, strip_rect_zeta(p));
    REQUIRE(roots.size() == 3);
    int imaginaryAxis = 0;
    std::vector<cplx> locs;
    for (const ZeroReport& r : roots) {
        locs.push_back(r.location);
        if (std::abs(r.location.real()) < 1e-9) ++imaginaryAxis;
    }
    CHECK(imaginaryAxis == 1);
    // conjugation pairing: the multiset {zeta} equals {-zeta*}
    for (cplx z : locs) {
        double best = 1e300;
        for (cplx w : locs) best = std::min(best, std::abs(-std::conj(z) - w));
        CHECK(best <= 1e-10);
    }
}

TEST_CASE("locate_zeros: shear root is simple, determinant winding there is 2") {
    SpectralParams p(0.5, 1.0);
    AnalyticFn f = [&](cplx z) { return shear_condition(z, p); };
    AnalyticFn fp = [&](cplx z) { return plasma_Z_plus_prime(z); };
    auto roots = locate_zeros(f, &fp, strip_rect_zeta(p));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].multiplicity == 1);
    CHECK(std::abs(roots[0].location.real()) <= 1e-10);

    // the diffusion root sits only 0.03 away; keep the box tight
    cplx zeta = roots[0].location;
    AnalyticFn det = [&](cplx w) { return full_determinant(I * p.tk() * w, p); };
    Rectangle box{zeta.real() - 0.01, zeta.real() + 0.01, zeta.imag() - 0.01, zeta.imag() + 0.01};
    CHECK(winding_count(det, box) == 2);
}

TEST_CASE("newton_polish basics") {
    AnalyticFn f = [](cplx z) { return z * z - 2.0; };
    AnalyticFn fp = [](cplx z) { return 2.0 * z; };
    ZeroReport r = newton_polish(f, &fp, cplx(1.5, 0.0), 1e-14);
    CHECK(std::abs(r.location - std::sqrt(2.0)) <= 1e-14);
    CHECK(r.newtonIterations <= 6);

    // secant fallback
    ZeroReport r2 = newton_polish(f, nullptr, cplx(1.5, 0.0), 1e-12);
    CHECK(std::abs(r2.location - std::sqrt(2.0)) <= 1e-11);

    // degenerate root signals derivative underflow: Newton halves toward 0
    // and |f'| crosses the 1e-14 floor before the step criterion is met
    AnalyticFn g = [](cplx z) { return z * z; };
    AnalyticFn gp = [](cplx z) { return 2.0 * z; };
    CHECK_THROWS_AS(newton_polish(g, &gp, cplx(0.1, 0.0), 1e-15, 80), domain_error);
}

TEST_CASE("real_poly_roots: critical-wave-number cubic and quartic factor") {
    const double c = SQRT_PI_OVER_2;
    auto cubic = real_poly_roots({-5.0 * c, 6.0 + 2.0 * PI, -11.0 * c, 6.0});
    REQUIRE(cubic.size() == 1);
    CHECK(cubic[0] == doctest::Approx(1.35603).epsilon(1e-5));

    auto quartic = real_poly_roots({130.0, -608.0, 1007.0, -635.0, 132.0});
    REQUIRE(quartic.size() == 2);
    CHECK(quartic[0] == doctest::Approx(1.59232).epsilon(1e-5));
    CHECK(quartic[1] == doctest::Approx(2.21295).epsilon(1e-5));

    CHECK(real_poly_roots({1.0, 0.0, 1.0}).empty());  // x^2 + 1
    CHECK_THROWS_AS(real_poly_roots({1.0}), domain_error);
}

TEST_CASE("real_poly_roots double root via critical-point probe") {
    // (x-1)^2 (x+2) = x^3 - 3x + 2
    auto roots = real_poly_roots({2.0, -3.0, 0.0, 1.0});
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(roots[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("real_poly_roots agrees with the Sturm count on random polynomials") {
    std::mt19937 gen(4242u);
    std::uniform_real_distribution<double> uc(-3.0, 3.0);
    std::uniform_int_distribution<int> ud(1, 6);
    for (int trial = 0; trial < 1000; ++trial) {
        int deg = ud(gen);
        std::vector<double> c(static_cast<size_t>(deg + 1));
        for (double& x : c) x = uc(gen);
        if (std::abs(c.back()) < 0.1) c.back() = 1.0;
        auto roots = real_poly_roots(c);
        int sturm = sturm_count(c);
        CAPTURE(trial);
        CHECK(static_cast<int>(roots.size()) == sturm);
    }
}
