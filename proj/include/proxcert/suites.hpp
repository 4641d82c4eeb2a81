#pragma once

#include <string>
#include <vector>

#include "proxcert/certificates.hpp"
#include "proxcert/fixtures.hpp"
#include "proxcert/rng.hpp"

namespace proxcert {

// Sampling-driven certificate suites over generated instances. Shared by
// the CLI `run --check ...` path and the acceptance tests.

inline Vec sample_state(const Fixture& fx, Rng& rng, double scale = 2.0) {
    Vec x = rng.gaussian_vec(fx.spec.n, scale);
    return fx.g.project(x);  // indicator g: sample inside the feasible set
}

inline std::vector<std::pair<Vec, Vec>> sample_pairs(int n, int count, Rng& rng,
                                                     double scale = 2.0) {
    std::vector<std::pair<Vec, Vec>> pairs;
    pairs.reserve(count);
    for (int i = 0; i < count; ++i)
        pairs.emplace_back(rng.gaussian_vec(n, scale), rng.gaussian_vec(n, scale));
    return pairs;
}

inline CheckReport suite_function_class(const SmoothOracle& f, std::uint64_t seed,
                                        int npairs = 1000) {
    Rng rng(seed);
    const auto pairs = sample_pairs(f.dim, npairs, rng);
    return check_function_class(f, pairs);
}

// Pointwise bound |G(x,t)| <= d(0, dphi(x)) on random (x, t) draws.
inline CheckReport suite_subgrad_upper_bound(const Fixture& fx, std::uint64_t seed,
                                             int nsamples = 100) {
    Rng rng(seed);
    CheckReport rep;
    rep.name = "subgrad-upper-bound";
    const double L = fx.problem.f.lip;
    for (int i = 0; i < nsamples; ++i) {
        const Vec x = sample_state(fx, rng);
        const double t = rng.log_uniform(0.05 / L, 3.0 / L);
        const double gn = pg_map(fx.problem, x, t).g_map.norm();
        const double d = fx.g.subgrad_dist(x, fx.problem.f.grad(x));
        rep.record("ub sample=" + std::to_string(i), d, gn);
    }
    return rep;
}

inline CheckReport suite_norm_monotonicity(const Fixture& fx, std::uint64_t seed,
                                           int nstates, const std::vector<double>& steps) {
    Rng rng(seed);
    CheckReport rep;
    rep.name = "norm-monotone";
    for (double t : steps)
        for (int i = 0; i < nstates; ++i)
            rep.merge(check_norm_monotonicity(fx.problem, sample_state(fx, rng), t));
    return rep;
}

inline CheckReport suite_refined_descent(const Fixture& fx, std::uint64_t seed,
                                         int nstates = 100) {
    Rng rng(seed);
    CheckReport rep;
    rep.name = "refined-descent";
    const double L = fx.problem.f.lip;
    for (int i = 0; i < nstates; ++i) {
        const double t = rng.uniform(0.01 / L, 1.0 / L);
        rep.merge(check_refined_descent(fx.problem, sample_state(fx, rng), t));
    }
    return rep;
}

inline CheckReport suite_ovg(const Fixture& fx, std::uint64_t seed, int nstates = 100) {
    Rng rng(seed);
    CheckReport rep;
    rep.name = "ovg";
    const double L = fx.problem.f.lip;
    for (int i = 0; i < nstates; ++i) {
        const Vec x = sample_state(fx, rng);
        const Vec y = sample_state(fx, rng);
        const double t = rng.log_uniform(0.05 / L, 2.0 / L);
        rep.merge(check_ovg(fx.problem, x, y, t));
    }
    return rep;
}

// Observed contraction ratio |G(x+,t)| / |G(x,t)| against the factor
// rho(t); states with a vanishing mapping are skipped.
inline CheckReport suite_contraction_ratio(const Fixture& fx, std::uint64_t seed, double t,
                                           double factor, int nstates = 100) {
    Rng rng(seed);
    CheckReport rep;
    rep.name = "contraction-ratio";
    for (int i = 0; i < nstates; ++i) {
        const Vec x = sample_state(fx, rng);
        const StepRecord rec = pg_map(fx.problem, x, t);
        const double gn = rec.g_map.norm();
        if (gn < 1e-12) continue;
        const double gn_plus = pg_map(fx.problem, rec.x_plus, t).g_map.norm();
        rep.record("ratio sample=" + std::to_string(i), factor + 1e-8, gn_plus / gn);
    }
    return rep;
}

}  // namespace proxcert
