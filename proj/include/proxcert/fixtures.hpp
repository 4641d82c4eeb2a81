#pragma once

#include <string>

#include "proxcert/functions.hpp"
#include "proxcert/oracles.hpp"
#include "proxcert/problem.hpp"

namespace proxcert {

// Generator parameters for a problem instance. Fixtures are rebuilt from
// these parameters on load; together with the seeded generators this makes
// fixture files small and byte-identical across runs.
struct FixtureSpec {
    std::string kind = "quadratic";  // quadratic | lasso | box | nonneg | logistic
    int n = 1;
    double mu = 1.0;
    double lip = 10.0;
    double lambda = 0.0;  // l1 weight (lasso)
    double lo = 0.0;      // box bounds
    double hi = 1.0;
    int m = 0;  // logistic sample count
    std::uint64_t seed = 0;
};

struct Fixture {
    FixtureSpec spec;
    QuadraticSmooth quad;     // valid unless kind == logistic
    LogisticSmooth logistic;  // valid when kind == logistic
    StructuredNonsmooth g;
    CompositeProblem problem;
};

inline Fixture build_fixture(const FixtureSpec& spec) {
    Fixture fx;
    fx.spec = spec;
    if (spec.kind == "logistic") {
        const int m = spec.m > 0 ? spec.m : 4 * spec.n + 1;
        fx.logistic = make_logistic(m, spec.n, spec.seed);
        fx.g = StructuredNonsmooth::make_zero(spec.n);
        fx.problem.f = fx.logistic.oracle();
    } else {
        fx.quad = make_quadratic(spec.n, spec.mu, spec.lip, spec.seed);
        if (spec.kind == "quadratic")
            fx.g = StructuredNonsmooth::make_zero(spec.n);
        else if (spec.kind == "lasso")
            fx.g = StructuredNonsmooth::make_l1(spec.n, spec.lambda);
        else if (spec.kind == "box")
            fx.g = StructuredNonsmooth::make_box(spec.n, spec.lo, spec.hi);
        else if (spec.kind == "nonneg")
            fx.g = StructuredNonsmooth::make_nonneg(spec.n);
        else
            throw std::invalid_argument("build_fixture: unknown kind '" + spec.kind + "'");
        fx.problem.f = fx.quad.oracle();
    }
    fx.problem.g = fx.g.oracle();
    return fx;
}

inline void attach_reference(Fixture& fx, const ReferenceSolution& sol) {
    fx.problem.ref_opt = RefOpt{sol.x_star, sol.phi_bar};
}

}  // namespace proxcert
