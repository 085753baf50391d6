#include "bgk/rootfinder.hpp"

#include <algorithm>
#include <cmath>

#include "bgk/errors.hpp"

namespace bgk {
namespace {

constexpr double CONTOUR_MIN_ABS = 1e-9;

struct ContourNode {
    cplx z, f;
};

struct ContourWalker {
    const AnalyticFn& f;
    long evals = 0;
    long evalBudget = 400000;

    cplx eval(cplx z) {
        if (++evals > evalBudget)
            throw convergence_error("winding_count: refinement did not settle");
        cplx v = f(z);
        if (std::abs(v) < CONTOUR_MIN_ABS)
            throw contour_error("winding_count: contour passes too close to a zero");
        return v;
    }

    static bool resolved(const ContourNode& a, const ContourNode& b) {
        double jump = std::arg(b.f / a.f);
        double ratio = std::abs(b.f) / std::abs(a.f);
        return std::abs(jump) < 0.5 * PI && ratio < 3.0 && ratio > 1.0 / 3.0;
    }

    // refine the gap (a, b) until every step passes the jump and ratio
    // criteria, appending interior nodes to out (excluding both endpoints)
    void refine(const ContourNode& a, const ContourNode& b,
                std::vector<ContourNode>& out, int depth) {
        if (resolved(a, b)) return;
        if (depth > 48)
            throw convergence_error("winding_count: phase refinement exhausted");
        ContourNode m{0.5 * (a.z + b.z), 0.0};
        m.f = eval(m.z);
        refine(a, m, out, depth + 1);
        out.push_back(m);
        refine(m, b, out, depth + 1);
    }

    double contourScale = 1.0;

    // Midpoint wrap check: a cluster of zeros between two nodes can wrap the
    // phase by 2pi while the endpoint jump and magnitude ratio look
    // innocent; a straddled double zero can even hide exactly 2pi in each
    // half so the midpoint sum still matches. The mismatch test catches odd
    // wraps; the dip test forces descent into suspicious magnitude minima
    // until the segment is shorter than the estimated zero distance.
    void verify(const ContourNode& a, const ContourNode& b,
                std::vector<ContourNode>& out, int depth) {
        double len = std::abs(b.z - a.z);
        if (len < 1e-13 * (1.0 + std::abs(a.z))) return;
        ContourNode m{0.5 * (a.z + b.z), 0.0};
        m.f = eval(m.z);
        double direct = std::arg(b.f / a.f);
        double viaMid = std::arg(m.f / a.f) + std::arg(b.f / m.f);
        bool mismatch = std::abs(viaMid - direct) >= 1e-6;
        if (!mismatch) {
            double dip = std::min({std::abs(a.f), std::abs(b.f), std::abs(m.f)});
            if (dip > 1e-2 * contourScale) return;
            double slope = (std::max({std::abs(a.f), std::abs(b.f), std::abs(m.f)}) - dip) /
                           (0.5 * len);
            double dEst = slope > 1e-300 ? dip / slope : len;
            if (len <= 0.5 * dEst) return;
        }
        if (depth > 48)
            throw convergence_error("winding_count: wrap verification exhausted");
        std::vector<ContourNode> left, right;
        refine(a, m, left, 0);
        refine(m, b, right, 0);
        auto descend_all = [&](const ContourNode& x, const std::vector<ContourNode>& mids,
                               const ContourNode& y) {
            const ContourNode* prev = &x;
            for (const ContourNode& n : mids) {
                verify(*prev, n, out, depth + 1);
                out.push_back(n);
                prev = &n;
            }
            verify(*prev, y, out, depth + 1);
        };
        descend_all(a, left, m);
        out.push_back(m);
        descend_all(m, right, b);
    }
};

std::vector<cplx> rect_contour(const Rectangle& r, int perEdge) {
    std::vector<cplx> pts;
    pts.reserve(static_cast<size_t>(4 * perEdge));
    for (int i = 0; i < perEdge; ++i) {
        double u = static_cast<double>(i) / perEdge;
        pts.emplace_back(r.reMin + u * r.width(), r.imMin);
    }
    for (int i = 0; i < perEdge; ++i) {
        double u = static_cast<double>(i) / perEdge;
        pts.emplace_back(r.reMax, r.imMin + u * r.height());
    }
    for (int i = 0; i < perEdge; ++i) {
        double u = static_cast<double>(i) / perEdge;
        pts.emplace_back(r.reMax - u * r.width(), r.imMax);
    }
    for (int i = 0; i < perEdge; ++i) {
        double u = static_cast<double>(i) / perEdge;
        pts.emplace_back(r.reMin, r.imMax - u * r.height());
    }
    return pts;
}

// Deterministic edge jitters for contour-grazing retries (absolute units).
Rectangle perturbed(const Rectangle& r, double base, int attempt) {
    double mags[] = {0.0, 1.0, -1.0, 2.0, -2.0, 4.0};
    double d = base * mags[attempt];
    return {r.reMin - d, r.reMax + d, r.imMin - 0.5 * d, r.imMax + d};
}

int winding_with_retry(const AnalyticFn& f, const Rectangle& rect,
                       int perEdge, double perturb) {
    for (int attempt = 0; attempt < 6; ++attempt) {
        try {
            return winding_count(f, perturbed(rect, perturb, attempt), perEdge);
        } catch (const contour_error&) {
            if (attempt == 5) throw;
        }
    }
    return 0;  // unreachable
}

struct Locator {
    const AnalyticFn& f;
    const AnalyticFn* fPrime;
    LocateOptions opt;
    std::vector<ZeroReport> found;

    double cluster_diameter() const { return std::max(opt.tol, 1e-6); }

    // Modified Newton z -= m f/f' recovers quadratic convergence on a root
    // of multiplicity m; secant fallback estimates f' directly. The iterate
    // is confined near the guess: on a misidentified cluster the m-times
    // step overshoots and would otherwise run away.
    ZeroReport cluster_polish(cplx guess, int mult, double maxWander) {
        cplx z = guess;
        try {
            for (int it = 0; it < 40; ++it) {
                cplx fz = f(z);
                cplx dz;
                if (fPrime) {
                    dz = (*fPrime)(z);
                } else {
                    double h = 1e-7 * (1.0 + std::abs(z));
                    dz = (f(z + h) - f(z - h)) / (2.0 * h);
                }
                if (std::abs(dz) < 1e-300) break;
                cplx step = static_cast<double>(mult) * fz / dz;
                z -= step;
                if (std::abs(z - guess) > maxWander) {
                    z = guess;
                    break;
                }
                if (std::abs(step) < 1e-11 * (1.0 + std::abs(z))) break;
            }
        } catch (const overflow_error&) {
            z = guess;  // iterate left the representable range of f
        }
        return {z, mult, std::abs(f(z)), 0};
    }

    bool polish_into(const Rectangle& cell) {
        // the winding count is exact about containment, so acceptance only
        // allows for the polish tolerance; anything wider can swallow a
        // neighbouring cell's root and silently drop one
        Rectangle inflated = cell;
        double m = 10.0 * opt.tol * (1.0 + std::abs(cell.center()));
        inflated.reMin -= m; inflated.reMax += m;
        inflated.imMin -= m; inflated.imMax += m;
        try {
            ZeroReport r = newton_polish(f, fPrime, cell.center(), opt.tol);
            if (inflated.contains(r.location)) {
                found.push_back(r);
                return true;
            }
        } catch (const convergence_error&) {
        } catch (const domain_error&) {
            // degenerate-root signal; caller keeps subdividing toward a cluster
        } catch (const overflow_error&) {
            // Newton iterate left the representable range of f
        }
        return false;
    }

    void descend(const Rectangle& cell, int count, int depth) {
        if (count == 0) return;
        if (count == 1 && polish_into(cell)) return;
        if (count == 1 && cell.diameter() <= cluster_diameter()) {
            // Newton keeps leaving a vanishingly small cell: take the center
            found.push_back({cell.center(), 1, std::abs(f(cell.center())), 0});
            return;
        }
        if (count >= 2 && cell.diameter() <= cluster_diameter()) {
            found.push_back(cluster_polish(cell.center(), count, 2.0 * cell.diameter() + 1e-6));
            return;
        }
        if (depth >= opt.maxDepth)
            throw convergence_error("locate_zeros: subdivision budget exhausted");

        // quadrisect about the center; on contour grazing move the split point
        double cx = 0.5 * (cell.reMin + cell.reMax);
        double cy = 0.5 * (cell.imMin + cell.imMax);
        const double jit = opt.perturb;
        const double mags[] = {0.0, 1.0, -1.0, 2.0, -2.0, 4.0};
        for (int attempt = 0; attempt < 6; ++attempt) {
            double sx = cx + jit * mags[attempt];
            double sy = cy + jit * mags[attempt];
            Rectangle cells[4] = {
                {cell.reMin, sx, cell.imMin, sy},
                {sx, cell.reMax, cell.imMin, sy},
                {cell.reMin, sx, sy, cell.imMax},
                {sx, cell.reMax, sy, cell.imMax}};
            int counts[4];
            bool retry = false;
            try {
                int sum = 0;
                for (int i = 0; i < 4; ++i) {
                    counts[i] = winding_count(f, cells[i], opt.samplesPerEdge);
                    sum += counts[i];
                }
                if (sum != count)
                    throw contour_error("locate_zeros: subdivision count mismatch");
            } catch (const contour_error&) {
                retry = true;
            } catch (const convergence_error&) {
                retry = true;  // refinement stalls are also a zero-at-the-split signal
            }
            if (!retry) {
                for (int i = 0; i < 4; ++i) descend(cells[i], counts[i], depth + 1);
                return;
            }
            if (attempt == 5) {
                // persistently grazing: a zero sits at the split scale
                if (count >= 2) {
                    found.push_back(cluster_polish(cell.center(), count, 2.0 * cell.diameter() + 1e-6));
                    return;
                }
                throw contour_error("locate_zeros: cannot place a contour around a grazing zero");
            }
        }
    }
};

double poly_eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
    return d;
}

double refine_bracket(const std::vector<double>& c, double a, double b) {
    double fa = poly_eval(c, a);
    if (fa == 0.0) return a;
    double fb = poly_eval(c, b);
    if (fb == 0.0) return b;
    for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (a + b);
        double fm = poly_eval(c, m);
        if (fm == 0.0 || 0.5 * (b - a) < 1e-14 * (1.0 + std::abs(m))) {
            a = b = m;
            break;
        }
        if ((fa < 0) != (fm < 0)) {
            b = m; fb = fm;
        } else {
            a = m; fa = fm;
        }
    }
    // Newton touch-up
    double x = 0.5 * (a + b);
    std::vector<double> d = poly_derivative(c);
    for (int it = 0; it < 8; ++it) {
        double fx = poly_eval(c, x);
        double dx = poly_eval(d, x);
        if (std::abs(dx) < 1e-300) break;
        double step = fx / dx;
        double xn = x - step;
        if (!(xn >= a - 1e-9 && xn <= b + 1e-9)) break;
        x = xn;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    return x;
}

void real_roots_impl(const std::vector<double>& c, std::vector<double>& out) {
    size_t deg = c.size() - 1;
    if (deg == 0) return;
    if (deg == 1) {
        out.push_back(-c[0] / c[1]);
        return;
    }
    double maxRatio = 0.0;
    for (size_t i = 0; i < deg; ++i)
        maxRatio = std::max(maxRatio, std::abs(c[i] / c[deg]));
    double bound = 1.0 + maxRatio;

    std::vector<double> crit;
    real_roots_impl(poly_derivative(c), crit);
    std::sort(crit.begin(), crit.end());

    std::vector<double> knots{-bound};
    for (double x : crit)
        if (x > -bound && x < bound) knots.push_back(x);
    knots.push_back(bound);

    double scale = 0.0;
    for (double ci : c) scale += std::abs(ci);
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        double a = knots[i], b = knots[i + 1];
        double fa = poly_eval(c, a), fb = poly_eval(c, b);
        if ((fa < 0) != (fb < 0)) {
            out.push_back(refine_bracket(c, a, b));
        }
    }
    // even-multiplicity roots touch zero at a critical point
    for (double x : crit) {
        double localScale = scale * std::max(1.0, std::pow(std::abs(x), static_cast<double>(deg)));
        if (std::abs(poly_eval(c, x)) <= 1e-11 * localScale) out.push_back(x);
    }
}

}  // namespace

double Rectangle::diameter() const { return std::hypot(width(), height()); }

int winding_count(const AnalyticFn& f, const Rectangle& rect, int samplesPerEdge) {
    if (!rect.valid()) throw domain_error("winding_count: degenerate rectangle");
    samplesPerEdge = std::max(samplesPerEdge, 4);
    std::vector<cplx> pts = rect_contour(rect, samplesPerEdge);
    ContourWalker walker{f};

    std::vector<ContourNode> poly;
    poly.reserve(pts.size() * 2);
    for (const cplx& z : pts) poly.push_back({z, walker.eval(z)});
    for (const ContourNode& n : poly)
        walker.contourScale = std::max(walker.contourScale, std::abs(n.f));
    {
        std::vector<ContourNode> refined;
        refined.reserve(poly.size() * 2);
        for (size_t i = 0; i < poly.size(); ++i) {
            const ContourNode& a = poly[i];
            const ContourNode& b = poly[(i + 1) % poly.size()];
            refined.push_back(a);
            walker.refine(a, b, refined, 0);
        }
        poly.swap(refined);
    }

    {
        std::vector<ContourNode> verified;
        verified.reserve(poly.size() * 2);
        for (size_t i = 0; i < poly.size(); ++i) {
            const ContourNode& a = poly[i];
            const ContourNode& b = poly[(i + 1) % poly.size()];
            verified.push_back(a);
            walker.verify(a, b, verified, 0);
        }
        poly.swap(verified);
    }

    double total = 0.0;
    for (size_t i = 0; i < poly.size(); ++i)
        total += std::arg(poly[(i + 1) % poly.size()].f / poly[i].f);
    double turns = total / (2.0 * PI);
    long n = std::lround(turns);
    if (std::abs(turns - static_cast<double>(n)) > 0.25)
        throw convergence_error("winding_count: phase total far from an integer");
    return static_cast<int>(n);
}

ZeroReport newton_polish(const AnalyticFn& f, const AnalyticFn* fPrime,
                         cplx guess, double tol, int maxIter) {
    cplx z = guess;
    cplx fz = f(z);
    cplx zPrev = z + cplx(1e-6, 1e-7) * (1.0 + std::abs(z));
    cplx fPrev = f(zPrev);
    for (int it = 1; it <= maxIter; ++it) {
        cplx deriv;
        if (fPrime) {
            deriv = (*fPrime)(z);
        } else {
            cplx df = fz - fPrev;
            cplx dz = z - zPrev;
            if (std::abs(dz) < 1e-300) dz = 1e-300;
            deriv = df / dz;
        }
        if (std::abs(deriv) < 1e-14)
            throw domain_error("newton_polish: derivative underflow (degenerate root?)");
        cplx step = fz / deriv;
        zPrev = z; fPrev = fz;
        z -= step;
        fz = f(z);
        if (std::abs(step) <= tol * (1.0 + std::abs(z)) && std::abs(fz) <= tol)
            return {z, 1, std::abs(fz), it};
    }
    throw convergence_error("newton_polish: maxIter exceeded");
}

std::vector<ZeroReport> locate_zeros(const AnalyticFn& f, const AnalyticFn* fPrime,
                                     Rectangle rect, const LocateOptions& opt) {
    if (!rect.valid()) throw domain_error("locate_zeros: degenerate rectangle");
    int total = winding_with_retry(f, rect, opt.samplesPerEdge, opt.perturb);
    Locator loc{f, fPrime, opt, {}};
    loc.descend(rect, total, 0);

    // merge duplicates polished from adjacent cells
    std::vector<ZeroReport> merged;
    for (const ZeroReport& r : loc.found) {
        bool absorbed = false;
        for (ZeroReport& m : merged) {
            if (std::abs(m.location - r.location) <
                std::max(1e-9, 20.0 * opt.tol) * (1.0 + std::abs(m.location))) {
                m.multiplicity += r.multiplicity;
                m.residual = std::max(m.residual, r.residual);
                absorbed = true;
                break;
            }
        }
        if (!absorbed) merged.push_back(r);
    }
    int sum = 0;
    for (const ZeroReport& r : merged) sum += r.multiplicity;
    if (sum != total)
        throw internal_error("locate_zeros: located multiplicities do not sum to the winding count");
    return merged;
}

std::vector<double> real_poly_roots(const std::vector<double>& coeffs) {
    if (coeffs.size() < 2) throw domain_error("real_poly_roots: degree >= 1 required");
    if (coeffs.back() == 0.0) throw domain_error("real_poly_roots: leading coefficient is zero");
    std::vector<double> out;
    real_roots_impl(coeffs, out);
    std::sort(out.begin(), out.end());
    std::vector<double> uniq;
    for (double x : out) {
        if (uniq.empty() || std::abs(x - uniq.back()) > 1e-9 * (1.0 + std::abs(x)))
            uniq.push_back(x);
    }
    return uniq;
}

int sturm_count(const std::vector<double>& coeffs) {
    if (coeffs.size() < 2) throw domain_error("sturm_count: degree >= 1 required");
    // Sturm chain with numerical zero clipping
    std::vector<std::vector<double>> chain;
    chain.push_back(coeffs);
    chain.push_back(poly_derivative(coeffs));
    auto norm = [](const std::vector<double>& p) {
        double s = 0.0;
        for (double c : p) s = std::max(s, std::abs(c));
        return s;
    };
    while (chain.back().size() > 1) {
        const std::vector<double>& a = chain[chain.size() - 2];
        const std::vector<double>& b = chain.back();
        // remainder of a / b, negated
        std::vector<double> r = a;
        double nb = norm(b);
        while (r.size() >= b.size()) {
            double q = r.back() / b.back();
            size_t shift = r.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) r[i + shift] -= q * b[i];
            r.pop_back();
            while (!r.empty() && std::abs(r.back()) < 1e-13 * (norm(a) + nb)) r.pop_back();
        }
        if (r.empty()) break;
        for (double& c : r) c = -c;
        chain.push_back(r);
    }
    auto signs_at_inf = [&](int dir) {
        int changes = 0, prev = 0;
        for (const std::vector<double>& p : chain) {
            double lead = p.back();
            int s = (lead > 0 ? 1 : -1);
            if (dir < 0 && (p.size() - 1) % 2 == 1) s = -s;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    };
    return signs_at_inf(-1) - signs_at_inf(+1);
}

}  // namespace bgk
