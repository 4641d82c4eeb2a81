#include "test_util.hpp"

using namespace proxcert;
using namespace proxcert::testutil;

TEST_CASE("hex-float encoding round-trips bit-exactly") {
    Rng rng(61);
    for (int i = 0; i < 1000; ++i) {
        double x = rng.gaussian(0.0, 1.0) * std::pow(10.0, rng.uniform_int(-300, 300));
        const double back = from_hex(to_hex(x));
        REQUIRE(std::memcmp(&x, &back, sizeof(double)) == 0);
    }
    for (double x : {0.0, -0.0, 1.5, -1e-308, std::numeric_limits<double>::denorm_min(),
                     std::numeric_limits<double>::infinity()}) {
        const double back = from_hex(to_hex(x));
        REQUIRE(std::memcmp(&x, &back, sizeof(double)) == 0);
    }
}

TEST_CASE("fixture spec JSON round-trip") {
    FixtureSpec s;
    s.kind = "lasso";
    s.n = 20;
    s.mu = 0.3;
    s.lip = 10.0;
    s.lambda = 0.5;
    s.seed = 123456789012345ull;
    const FixtureSpec back = fixture_from_json(fixture_to_json(s));
    REQUIRE(back.kind == s.kind);
    REQUIRE(back.n == s.n);
    REQUIRE(back.mu == s.mu);
    REQUIRE(back.lip == s.lip);
    REQUIRE(back.lambda == s.lambda);
    REQUIRE(back.seed == s.seed);

    json j = fixture_to_json(s);
    j["schema"] = "bogus";
    REQUIRE_THROWS_AS(fixture_from_json(j), std::invalid_argument);
}

TEST_CASE("trace JSON round-trip is bit-exact") {
    const auto fx = build_fixture({.kind = "lasso", .n = 4, .mu = 0.5, .lip = 6.0,
                                   .lambda = 0.4, .seed = 62});
    Rng rng(63);
    const Trace tr = apg_run(fx.problem, rng.gaussian_vec(4, 2.0), default_schedule(6.0), 20);
    const Trace back = trace_from_json(trace_to_json(tr));
    REQUIRE(back.kind == tr.kind);
    REQUIRE(back.lip == tr.lip);
    REQUIRE(back.x.size() == tr.x.size());
    for (std::size_t k = 0; k < tr.x.size(); ++k) {
        REQUIRE(back.x[k] == tr.x[k]);
        REQUIRE(back.y[k] == tr.y[k]);
        REQUIRE(back.g_map[k] == tr.g_map[k]);
        REQUIRE(back.gnorm[k] == tr.gnorm[k]);
        REQUIRE(back.phi_y[k] == tr.phi_y[k]);
    }
    REQUIRE(back.v.size() == tr.v.size());
}

TEST_CASE("trace CSV schema is pinned") {
    const auto p = compose(quad1d(1.0, 0.0), StructuredNonsmooth::make_zero(1));
    const Trace tr = pgd_run(p, vec1(1.0), 1.0, 2);
    const std::string csv = trace_to_csv(tr);
    REQUIRE(csv.rfind("# proxcert-trace-csv v1\nk,gnorm,phi_x,phi_y,wall_seconds\n", 0) == 0);
    // 2 header lines + K+1 rows
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 2 + 3);
}

TEST_CASE("compare CSV: schema, envelopes, and the k = 0 empty-cell convention") {
    Fixture fx = build_fixture({.kind = "lasso", .n = 5, .mu = 0.5, .lip = 8.0,
                                .lambda = 0.4, .seed = 64});
    attach_reference(fx, reference_solve(fx.problem));
    Rng rng(65);
    const Vec x0 = rng.gaussian_vec(5, 2.0);
    const Trace a = pgd_run(fx.problem, x0, 1.0, 30);
    const Trace b = apg_run(fx.problem, x0, default_schedule(8.0), 30);
    const std::string csv = compare_to_csv(a, b, fx.problem);
    REQUIRE(csv.rfind("# proxcert-compare-csv v1\n" + std::string(kCompareCsvHeader) + "\n",
                      0) == 0);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::getline(in, line);  // k = 0 row
    // env_a (pgd, division by k) is the empty second-to-last cell
    REQUIRE(line.find(",,") != std::string::npos);
}

TEST_CASE("report JSON carries the full verdict") {
    const auto fx = build_fixture({.kind = "lasso", .n = 3, .mu = 0.5, .lip = 5.0,
                                   .lambda = 0.3, .seed = 66});
    const CheckReport rep = suite_refined_descent(fx, 67, 20);
    const json j = report_to_json(rep);
    REQUIRE(j["schema"] == kReportSchema);
    REQUIRE(j["passed"] == rep.passed);
    REQUIRE(j["samples"] == rep.samples);
    REQUIRE(from_hex(j["worst_margin"].get<std::string>()) == rep.worst_margin);
}
