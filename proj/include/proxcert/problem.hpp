#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <utility>

#include "proxcert/types.hpp"

namespace proxcert {

// Access to a smooth function f with declared constants: f is lip-smooth
// and mu-strongly convex, 0 <= mu <= lip.
struct SmoothOracle {
    std::function<double(const Vec&)> eval;
    std::function<Vec(const Vec&)> grad;
    double mu = 0.0;
    double lip = 1.0;
    int dim = 0;
};

enum class ProxKind { generic, zero, l1, box, nonneg };

// Access to a proper closed convex g through its value (possibly +inf)
// and its proximal mapping. subgrad_dist, when present, evaluates the
// exact distance d(0, w + dg(x)); it exists only for structured g.
struct ProxOracle {
    std::function<double(const Vec&)> eval;
    std::function<Vec(const Vec&, double)> prox;
    std::function<double(const Vec&, const Vec&)> subgrad_dist;  // may be empty
    ProxKind kind = ProxKind::generic;

    bool has_subgrad_dist() const { return static_cast<bool>(subgrad_dist); }
};

struct RefOpt {
    Vec x_star;
    double phi_bar = 0.0;
};

struct CompositeProblem {
    SmoothOracle f;
    ProxOracle g;
    std::optional<RefOpt> ref_opt;

    double phi(const Vec& x) const { return f.eval(x) + g.eval(x); }
};

// One proximal gradient step at (x, t):
//   g_map  = (x - prox_{tg}(x - t grad f(x))) / t
//   x_plus = x - t * g_map
//   s_plus = (x - x_plus)/t - grad f(x), a subgradient of g at x_plus.
struct StepRecord {
    Vec x;
    double t = 0.0;
    Vec g_map;
    Vec x_plus;
    Vec s_plus;
};

inline Vec prox_apply(const ProxOracle& g, const Vec& v, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("prox_apply: step size must be positive");
    if (!is_finite(v)) throw std::invalid_argument("prox_apply: non-finite input point");
    return g.prox(v, t);
}

inline StepRecord pg_map(const CompositeProblem& p, const Vec& x, double t) {
    StepRecord rec;
    rec.x = x;
    rec.t = t;
    const Vec grad = p.f.grad(x);
    // x_plus is the prox output itself, not x - t*g_map: recomputing it from
    // the mapping would round it epsilon-outside dom g for indicator g.
    rec.x_plus = prox_apply(p.g, x - t * grad, t);
    rec.g_map = (x - rec.x_plus) / t;
    rec.s_plus = rec.g_map - grad;
    return rec;
}

// Re-derives s_plus from the stored step; exposed for audit.
inline Vec recover_subgradient(const StepRecord& rec, const SmoothOracle& f) {
    Vec s = (rec.x - rec.x_plus) / rec.t - f.grad(rec.x);
    if (!is_finite(s)) throw std::invalid_argument("recover_subgradient: non-finite result");
    return s;
}

}  // namespace proxcert
