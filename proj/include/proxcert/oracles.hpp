#pragma once

#include <functional>
#include <vector>

#include "proxcert/functions.hpp"
#include "proxcert/problem.hpp"

namespace proxcert {

// Independent brute-force references. Deliberately slow and simple; used
// only in tests and fixture generation.

struct ReferenceSolution {
    Vec x_star;
    double phi_bar = 0.0;
    double residual = 0.0;  // ||G(x_star, 1/L)||
};

// argmin over [lo, hi] of g(y) + (y - v)^2 / (2t): coarse grid (step 1e-3)
// then ternary search down to width 1e-10. Attainable accuracy is limited
// to about sqrt(eps) near the minimum, where objective differences fall
// below double rounding. The bracket must contain the minimizer; an argmin
// on the boundary raises bracket_error.
inline double grid_prox_1d(const std::function<double(double)>& g, double v, double t,
                           double lo, double hi) {
    if (!(t > 0.0)) throw std::invalid_argument("grid_prox_1d: step size must be positive");
    if (!(lo < hi)) throw std::invalid_argument("grid_prox_1d: need lo < hi");
    const auto obj = [&](double y) { return g(y) + (y - v) * (y - v) / (2.0 * t); };

    const double step = 1e-3;
    const int cells = static_cast<int>(std::ceil((hi - lo) / step));
    double best_y = lo, best_val = obj(lo);
    for (int i = 1; i <= cells; ++i) {
        const double y = std::min(lo + i * step, hi);
        const double val = obj(y);
        if (val < best_val) {
            best_val = val;
            best_y = y;
        }
    }
    if (best_y <= lo || best_y >= hi)
        throw bracket_error("grid_prox_1d: argmin on bracket boundary");

    double a = std::max(lo, best_y - step);
    double b = std::min(hi, best_y + step);
    while (b - a > 1e-10) {
        const double m1 = a + (b - a) / 3.0;
        const double m2 = b - (b - a) / 3.0;
        if (obj(m1) <= obj(m2))
            b = m2;
        else
            a = m1;
    }
    return 0.5 * (a + b);
}

// Reference optimum via PGD at t = 1/L down to ||G|| <= 1e-12 (capped at
// 1e7 iterations). The starting point defaults to the origin projected
// into dom g.
inline ReferenceSolution reference_solve(const CompositeProblem& p, const Vec& x0,
                                         double tol = 1e-12, long max_iter = 10'000'000) {
    const double t = 1.0 / p.f.lip;
    Vec x = x0;
    StepRecord rec = pg_map(p, x, t);
    double res = rec.g_map.norm();
    for (long k = 0; k < max_iter && res > tol; ++k) {
        x = rec.x_plus;
        rec = pg_map(p, x, t);
        res = rec.g_map.norm();
    }
    if (res > tol) throw no_reference("reference_solve: residual target not reached");
    ReferenceSolution sol;
    sol.x_star = x;
    sol.phi_bar = p.phi(x);
    sol.residual = res;
    return sol;
}

inline ReferenceSolution reference_solve(const CompositeProblem& p) {
    Vec x0 = Vec::Zero(p.f.dim);
    x0 = prox_apply(p.g, x0, 1.0);  // land in dom g
    return reference_solve(p, x0);
}

// Direct solve for unconstrained quadratics, used to cross-check
// reference_solve.
inline ReferenceSolution solve_quadratic_direct(const QuadraticSmooth& q) {
    ReferenceSolution sol;
    sol.x_star = q.A.ldlt().solve(q.b);
    sol.phi_bar = q.eval(sol.x_star);
    sol.residual = q.grad(sol.x_star).norm();
    return sol;
}

// d(0, w + dg(x)) by enumeration over per-coordinate subdifferential
// intervals (grid step 1e-4). The subdifferential of l1/box g is a product
// set, so the squared distance separates coordinatewise and enumerating
// each interval independently equals enumerating the full product.
// Unbounded normal-cone intervals are truncated at radius 10; all fixture
// gradients stay well inside that radius.
inline double subdiff_enum_dist(const StructuredNonsmooth& g, const Vec& x, const Vec& w) {
    if (x.size() > 3)
        throw std::invalid_argument("subdiff_enum_dist: dimension must be <= 3");
    const double kRadius = 10.0;
    const double kStep = 1e-4;

    const auto interval_min = [&](double wi, double a, double b) {
        double best = std::numeric_limits<double>::infinity();
        const int cells = static_cast<int>(std::ceil((b - a) / kStep));
        for (int i = 0; i <= cells; ++i) {
            const double s = std::min(a + i * kStep, b);
            best = std::min(best, std::abs(wi + s));
        }
        return best;
    };

    double s2 = 0.0;
    for (int i = 0; i < x.size(); ++i) {
        double lo, hi;
        switch (g.kind) {
            case ProxKind::l1:
                if (x[i] > 0.0)
                    lo = hi = g.lambda;
                else if (x[i] < 0.0)
                    lo = hi = -g.lambda;
                else {
                    lo = -g.lambda;
                    hi = g.lambda;
                }
                break;
            case ProxKind::box:
            case ProxKind::nonneg:
                if (x[i] < g.lo[i] || x[i] > g.hi[i])
                    throw std::invalid_argument("subdiff_enum_dist: infeasible point");
                if (g.lo[i] == g.hi[i]) {
                    lo = -kRadius;
                    hi = kRadius;
                } else if (x[i] == g.lo[i]) {
                    lo = -kRadius;
                    hi = 0.0;
                } else if (x[i] == g.hi[i]) {
                    lo = 0.0;
                    hi = kRadius;
                } else {
                    lo = hi = 0.0;
                }
                break;
            default:
                throw std::invalid_argument("subdiff_enum_dist: unsupported g kind");
        }
        if (std::abs(w[i]) > kRadius)
            throw std::invalid_argument("subdiff_enum_dist: |w| exceeds truncation radius");
        const double c = (lo == hi) ? std::abs(w[i] + lo) : interval_min(w[i], lo, hi);
        s2 += c * c;
    }
    return std::sqrt(s2);
}

}  // namespace proxcert
