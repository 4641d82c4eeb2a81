#include "test_util.hpp"

using namespace proxcert;
using namespace proxcert::testutil;
using Catch::Matchers::WithinAbs;

namespace {

Fixture lasso_fixture(int n, double mu, double lip, std::uint64_t seed) {
    FixtureSpec spec;
    spec.kind = "lasso";
    spec.n = n;
    spec.mu = mu;
    spec.lip = lip;
    spec.lambda = 0.5;
    spec.seed = seed;
    return build_fixture(spec);
}

}  // namespace

TEST_CASE("check_function_class: equality case mu = L has margin ~0") {
    const QuadraticSmooth q = quad1d(1.0, 0.0);
    Rng rng(1);
    const auto pairs = sample_pairs(1, 50, rng);
    const CheckReport rep = check_function_class(q.oracle(), pairs);
    REQUIRE(rep.passed);
    REQUIRE_THAT(rep.worst_margin, WithinAbs(0.0, 1e-10));
}

TEST_CASE("check_function_class: well-conditioned declarations pass") {
    const QuadraticSmooth q = make_quadratic(5, 1.0, 100.0, 77);
    const CheckReport rep = suite_function_class(q.oracle(), 31, 100);
    REQUIRE(rep.passed);
    REQUIRE(rep.witnesses.empty());
}

TEST_CASE("check_function_class: mu = 0 oracle exercises the cocoercivity bounds") {
    const LogisticSmooth f = make_logistic(25, 6, 3);
    const CheckReport rep = suite_function_class(f.oracle(), 32, 200);
    REQUIRE(rep.passed);
}

TEST_CASE("check_function_class: a mis-declared lip is caught with a witness") {
    QuadraticSmooth q = make_quadratic(5, 1.0, 40.0, 13);
    SmoothOracle wrong = q.oracle();
    wrong.lip = q.lip / 2.0;  // deliberately too small
    // include a pair along the top eigenvector, where the violation is largest
    Eigen::SelfAdjointEigenSolver<Mat> es(q.A);
    const Vec top = es.eigenvectors().col(4);
    std::vector<std::pair<Vec, Vec>> pairs = {{top, Vec::Zero(5)}};
    Rng rng(2);
    for (const auto& pr : sample_pairs(5, 50, rng)) pairs.push_back(pr);
    const CheckReport rep = check_function_class(wrong, pairs);
    REQUIRE_FALSE(rep.passed);
    REQUIRE_FALSE(rep.witnesses.empty());
}

TEST_CASE("check_function_class: empty pair list is invalid") {
    const QuadraticSmooth q = quad1d(1.0, 0.0);
    REQUIRE_THROWS_AS(check_function_class(q.oracle(), {}), std::invalid_argument);
}

TEST_CASE("check_ovg: x = y at t = 1/L reduces to one-step descent") {
    const auto fx = lasso_fixture(5, 0.0 + 0.5, 8.0, 41);
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        const Vec x = rng.gaussian_vec(5, 2.0);
        const CheckReport rep = check_ovg(fx.problem, x, x, 1.0 / 8.0);
        REQUIRE(rep.passed);
    }
}

TEST_CASE("check_ovg: suboptimality lower bound at x = x*") {
    Fixture fx = lasso_fixture(6, 0.5, 7.0, 42);
    attach_reference(fx, reference_solve(fx.problem));
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const Vec y = rng.gaussian_vec(6, 2.0);
        const CheckReport rep =
            check_ovg(fx.problem, fx.problem.ref_opt->x_star, y, 1.0 / 7.0);
        REQUIRE(rep.passed);
    }
}

TEST_CASE("check_ovg: 1-D quadratic with mu = L holds with equality") {
    // hand expansion of both sides cancels exactly for f = a x^2 / 2, g = 0
    const auto p = compose(quad1d(3.0, 0.0), StructuredNonsmooth::make_zero(1));
    Rng rng(6);
    for (int i = 0; i < 50; ++i) {
        const Vec x = vec1(rng.uniform(-2.0, 2.0));
        const Vec y = vec1(rng.uniform(-2.0, 2.0));
        const double t = rng.uniform(0.01, 0.5);
        const CheckReport rep = check_ovg(p, x, y, t);
        REQUIRE_THAT(rep.worst_margin, WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("check_norm_monotonicity: rho collapses to 0 when mu t = L t = 1") {
    const auto p = compose(quad1d(1.0, 0.7), StructuredNonsmooth::make_l1(1, 0.3));
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        const Vec x = vec1(rng.uniform(-3.0, 3.0));
        const StepRecord rec = pg_map(p, x, 1.0);
        REQUIRE(pg_map(p, rec.x_plus, 1.0).g_map.norm() <= 1e-12);
        REQUIRE(check_norm_monotonicity(p, x, 1.0).passed);
    }
}

TEST_CASE("check_norm_monotonicity: full chain at rho = 0.6") {
    const auto fx = lasso_fixture(5, 1.0, 4.0, 15);
    const double t = 0.4;  // rho = max{|1-4*0.4|, |1-0.4|} = 0.6
    REQUIRE_THAT(rho_factor(1.0, 4.0, t), WithinAbs(0.6, 1e-15));
    Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        const CheckReport rep =
            check_norm_monotonicity(fx.problem, rng.gaussian_vec(5, 2.0), t);
        REQUIRE(rep.passed);
    }
}

TEST_CASE("check_norm_monotonicity: distance links skipped without subgrad_dist") {
    auto fx = lasso_fixture(4, 0.5, 5.0, 16);
    CompositeProblem p = fx.problem;
    p.g.subgrad_dist = nullptr;
    const CheckReport rep = check_norm_monotonicity(p, Vec::Ones(4), 0.1);
    REQUIRE(rep.passed);
    REQUIRE_FALSE(rep.notes.empty());
}

TEST_CASE("contraction ratio never exceeds (L-mu)/(L+mu) at t = 2/(L+mu)") {
    const auto fx = lasso_fixture(8, 1.0, 9.0, 17);
    const double t = 2.0 / (9.0 + 1.0);
    const double factor = (9.0 - 1.0) / (9.0 + 1.0);
    REQUIRE_THAT(rho_factor(1.0, 9.0, t), WithinAbs(factor, 1e-15));
    const CheckReport rep = suite_contraction_ratio(fx, 9, t, factor, 100);
    REQUIRE(rep.passed);
}

TEST_CASE("rho(2/L) = 1 when mu = 0: chain holds with factor exactly 1") {
    FixtureSpec spec;
    spec.kind = "lasso";
    spec.n = 5;
    spec.mu = 0.0;
    spec.lip = 6.0;
    spec.lambda = 0.4;
    spec.seed = 18;
    const Fixture fx = build_fixture(spec);
    REQUIRE(rho_factor(0.0, 6.0, 2.0 / 6.0) == 1.0);
    Rng rng(10);
    for (int i = 0; i < 50; ++i) {
        const CheckReport rep =
            check_norm_monotonicity(fx.problem, rng.gaussian_vec(5, 2.0), 2.0 / 6.0);
        REQUIRE(rep.passed);
    }
}

TEST_CASE("check_refined_descent: mu t = 1 limiting case") {
    const auto p = compose(quad1d(1.0, 0.0), StructuredNonsmooth::make_zero(1));
    const CheckReport rep = check_refined_descent(p, vec1(1.0), 1.0);
    REQUIRE(rep.passed);
}

TEST_CASE("check_refined_descent: dp1 on a mu = 0 lasso problem") {
    CompositeProblem p = compose(quad1d(1.0, 2.0), StructuredNonsmooth::make_l1(1, 1.0));
    p.f.mu = 0.0;  // declare only smoothness
    const CheckReport rep = check_refined_descent(p, vec1(0.0), 1.0);
    REQUIRE(rep.passed);
}

TEST_CASE("check_refined_descent: dominates the classical descent lemma") {
    const auto fx = lasso_fixture(6, 0.8, 7.0, 19);
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const double t = rng.uniform(0.01 / 7.0, 1.0 / 7.0);
        const CheckReport rep =
            check_refined_descent(fx.problem, rng.gaussian_vec(6, 2.0), t);
        REQUIRE(rep.passed);
    }
}

TEST_CASE("check_refined_descent: t > 1/L is out of hypothesis") {
    const auto fx = lasso_fixture(3, 0.5, 5.0, 20);
    REQUIRE_THROWS_AS(check_refined_descent(fx.problem, Vec::Ones(3), 0.5),
                      out_of_hypothesis);
}

TEST_CASE("pgd_potential: C_0 equals the initial gap; one-step exactness at mu = L") {
    auto p = compose(quad1d(2.0, 1.0), StructuredNonsmooth::make_zero(1));
    p.ref_opt = RefOpt{vec1(1.0), p.phi(vec1(1.0))};
    const Trace tr = pgd_run(p, vec1(3.0), 1.0, 3);
    const std::vector<double> c = pgd_potential(tr, p, 1.0);
    REQUIRE_THAT(c[0], WithinAbs(tr.phi_x[0] - p.ref_opt->phi_bar, 1e-14));
    REQUIRE_THAT(c[1], WithinAbs(0.0, 1e-12));
}

TEST_CASE("pgd_potential: nonincreasing along a lasso run") {
    Fixture fx = lasso_fixture(20, 0.5, 10.0, 23);
    attach_reference(fx, reference_solve(fx.problem));
    Rng rng(12);
    const Trace tr = pgd_run(fx.problem, rng.gaussian_vec(20, 2.0), 1.0, 500);
    const std::vector<double> c = pgd_potential(tr, fx.problem, 1.0);
    double max_increase = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k)
        max_increase = std::max(max_increase, c[k] - c[k - 1]);
    REQUIRE(max_increase <= 1e-10);
    REQUIRE(check_pgd_potential(tr, fx.problem, 1.0).passed);
}

TEST_CASE("pgd_potential: missing reference raises") {
    const auto fx = lasso_fixture(3, 0.5, 5.0, 24);
    const Trace tr = pgd_run(fx.problem, Vec::Ones(3), 1.0, 5);
    REQUIRE_THROWS_AS(pgd_potential(tr, fx.problem, 1.0), requires_reference);
}

TEST_CASE("apg_potential: frozen iterates at the optimum give C_k = 0") {
    auto p = compose(quad1d(1.0, 2.0), StructuredNonsmooth::make_l1(1, 1.0));
    p.ref_opt = RefOpt{vec1(1.0), -0.5};
    const Schedule s = default_schedule(1.0);
    const Trace tr = apg_run(p, vec1(1.0), s, 10);
    for (double c : apg_potential(tr, p, s)) REQUIRE_THAT(c, WithinAbs(0.0, 1e-12));
    REQUIRE(check_apg_potential(tr, p, s).passed);
}

TEST_CASE("apg_potential: per-k telescoping bound on a lasso fixture") {
    Fixture fx = lasso_fixture(10, 0.5, 8.0, 25);
    attach_reference(fx, reference_solve(fx.problem));
    Rng rng(13);
    const Schedule s = default_schedule(8.0);
    const Trace tr = apg_run(fx.problem, rng.gaussian_vec(10, 2.0), s, 100);
    const CheckReport rep = check_apg_potential(tr, fx.problem, s);
    REQUIRE(rep.passed);
}

TEST_CASE("rate_bounds: the two objective-rate forms coincide at k = 3") {
    const Schedule s = default_schedule(1.0);
    REQUIRE_THAT(8.0 / (4.0 * 5.0), WithinAbs(1.0 / s.B(3), 1e-15));
}

TEST_CASE("rate_bounds: APG bounds hold on a lasso run") {
    Fixture fx = lasso_fixture(20, 0.5, 10.0, 26);
    attach_reference(fx, reference_solve(fx.problem));
    Rng rng(14);
    const Schedule s = default_schedule(10.0);
    const Trace tr = apg_run(fx.problem, rng.gaussian_vec(20, 2.0), s, 200);
    const CheckReport rep = rate_bounds(tr, fx.problem, s);
    REQUIRE(rep.passed);
}

TEST_CASE("rate_bounds: GD squared-gradient envelope on a quadratic") {
    FixtureSpec spec;
    spec.kind = "quadratic";
    spec.n = 6;
    spec.mu = 0.5;
    spec.lip = 9.0;
    spec.seed = 27;
    Fixture fx = build_fixture(spec);
    attach_reference(fx, reference_solve(fx.problem));
    Rng rng(15);
    const Trace tr = pgd_run(fx.problem, rng.gaussian_vec(6, 2.0), 1.0, 300);
    const CheckReport rep = rate_bounds(tr, fx.problem, default_schedule(9.0));
    REQUIRE(rep.passed);

    const Trace tr2 = pgd_run(fx.problem, rng.gaussian_vec(6, 2.0), 0.5, 10);
    REQUIRE_THROWS_AS(rate_bounds(tr2, fx.problem, default_schedule(9.0)),
                      std::invalid_argument);
}

TEST_CASE("adversarial: halved L breaks refined descent with witnesses") {
    Fixture fx = build_fixture({.kind = "quadratic", .n = 5, .mu = 0.0, .lip = 8.0,
                                .seed = 28});
    fx.problem.f.lip = 4.0;  // lie about smoothness
    const CheckReport rep = suite_refined_descent(fx, 16, 100);
    REQUIRE_FALSE(rep.passed);
    REQUIRE_FALSE(rep.witnesses.empty());
}

TEST_CASE("reports are pure: rerunning yields identical results") {
    const auto fx = lasso_fixture(5, 0.5, 6.0, 29);
    const CheckReport a = suite_refined_descent(fx, 17, 50);
    const CheckReport b = suite_refined_descent(fx, 17, 50);
    REQUIRE(a.samples == b.samples);
    REQUIRE(a.worst_margin == b.worst_margin);
    REQUIRE(a.passed == b.passed);
}
