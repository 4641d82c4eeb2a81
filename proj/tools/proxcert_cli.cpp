// Command-line front end: generate fixtures, run solvers with certificate
// suites, and emit plot-ready comparisons.
//
// Exit codes: 0 all checks pass, 2 at least one certificate failed,
// 1 usage or I/O error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "proxcert/proxcert.hpp"

namespace fs = std::filesystem;
using namespace proxcert;

namespace {

std::string output_root(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("PROXCERT_OUT")) return env;
    return ".";
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Config file whose keys mirror the long flags; explicitly passed flags win.
void apply_config(CLI::App* cmd, const std::string& path) {
    if (path.empty()) return;
    const json cfg = read_json(path);
    for (const auto& [key, value] : cfg.items()) {
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (opt == nullptr || opt->count() > 0) continue;
        std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        opt->add_result(text);
        opt->run_callback();
    }
}

Vec initial_point(const Fixture& fx, const std::string& mode) {
    Vec x0;
    if (mode == "zeros") {
        x0 = Vec::Zero(fx.spec.n);
    } else if (mode == "ones") {
        x0 = Vec::Ones(fx.spec.n);
    } else if (mode == "seeded") {
        Rng rng(fx.spec.seed + 1);
        x0 = rng.gaussian_vec(fx.spec.n, 2.0);
    } else {
        throw std::invalid_argument("unknown x0 mode '" + mode + "'");
    }
    return fx.g.project(x0);
}

void print_report(const CheckReport& rep) {
    std::cout << (rep.passed ? "PASS" : "FAIL") << "  " << rep.name
              << "  samples=" << rep.samples << "  worst_margin=" << rep.worst_margin;
    if (!rep.notes.empty()) std::cout << "  (" << rep.notes << ")";
    std::cout << "\n";
    for (std::size_t i = 0; i < rep.witnesses.size() && i < 5; ++i)
        std::cout << "      witness: " << rep.witnesses[i] << "\n";
}

int cmd_gen(const FixtureSpec& spec, const std::string& out_dir, const std::string& name) {
    Fixture fx = build_fixture(spec);
    const ReferenceSolution sol = reference_solve(fx.problem);

    fs::create_directories(out_dir);
    const std::string stem = (fs::path(out_dir) / name).string();
    write_file(stem + ".problem.json", fixture_to_json(spec).dump(2) + "\n");
    write_file(stem + ".reference.json", reference_to_json(sol).dump(2) + "\n");
    std::cout << "wrote " << stem << ".problem.json\n"
              << "wrote " << stem << ".reference.json  (residual=" << sol.residual << ")\n";
    return 0;
}

struct RunArgs {
    std::string fixture_path;
    std::string reference_path;
    std::string solver = "pgd";
    double eta = 1.0;
    int K = 200;
    std::string checks;
    std::string out_prefix;
    std::string x0_mode = "seeded";
    int samples = 100;
};

int cmd_run(const RunArgs& args) {
    const FixtureSpec spec = fixture_from_json(read_json(args.fixture_path));
    Fixture fx = build_fixture(spec);

    std::string ref_path = args.reference_path;
    if (ref_path.empty()) {
        ref_path = args.fixture_path;
        const auto pos = ref_path.rfind(".problem.json");
        if (pos != std::string::npos) ref_path.replace(pos, std::string::npos, ".reference.json");
    }
    if (fs::exists(ref_path)) {
        attach_reference(fx, reference_from_json(read_json(ref_path)));
    }

    const Vec x0 = initial_point(fx, args.x0_mode);
    const Schedule sched = default_schedule(fx.problem.f.lip);
    Trace tr;
    if (args.solver == "pgd") {
        tr = pgd_run(fx.problem, x0, args.eta, args.K);
    } else if (args.solver == "fgm") {
        if (fx.g.kind != ProxKind::zero)
            throw std::invalid_argument("fgm requires a smooth-only fixture (g == 0)");
        tr = fgm_run(fx.problem.f, x0, sched, args.K);
    } else if (args.solver == "apg") {
        tr = apg_run(fx.problem, x0, sched, args.K);
    } else {
        throw std::invalid_argument("unknown solver '" + args.solver + "'");
    }

    std::string prefix = args.out_prefix;
    if (prefix.empty()) {
        prefix = args.fixture_path;
        const auto pos = prefix.rfind(".problem.json");
        if (pos != std::string::npos) prefix.erase(pos);
        prefix += "." + args.solver;
    }
    write_file(prefix + ".trace.csv", trace_to_csv(tr));
    write_file(prefix + ".trace.json", trace_to_json(tr).dump() + "\n");
    std::cout << "wrote " << prefix << ".trace.csv\n";

    bool all_passed = true;
    for (const std::string& check : split_csv(args.checks)) {
        CheckReport rep;
        if (check == "function-class") {
            rep = suite_function_class(fx.problem.f, spec.seed + 2, args.samples);
        } else if (check == "ub") {
            rep = suite_subgrad_upper_bound(fx, spec.seed + 3, args.samples);
        } else if (check == "ovg") {
            rep = suite_ovg(fx, spec.seed + 4, args.samples);
        } else if (check == "norm-monotone") {
            const double L = fx.problem.f.lip;
            const double mu = fx.problem.f.mu;
            rep = suite_norm_monotonicity(fx, spec.seed + 5, args.samples,
                                          {0.2 / L, 1.0 / L, 2.0 / (L + mu), 2.0 / L});
        } else if (check == "refined-descent") {
            rep = suite_refined_descent(fx, spec.seed + 6, args.samples);
        } else if (check == "pgd-potential") {
            rep = check_pgd_potential(tr, fx.problem, args.eta);
        } else if (check == "apg-potential") {
            rep = check_apg_potential(tr, fx.problem, sched);
        } else if (check == "rates") {
            rep = rate_bounds(tr, fx.problem, sched);
        } else {
            throw std::invalid_argument("unknown check '" + check + "'");
        }
        print_report(rep);
        write_file(prefix + ".report." + check + ".json", report_to_json(rep).dump(2) + "\n");
        all_passed = all_passed && rep.passed;
    }
    return all_passed ? 0 : 2;
}

int cmd_compare(const std::string& trace_a, const std::string& trace_b,
                const std::string& fixture_path, const std::string& reference_path,
                const std::string& out_path) {
    const FixtureSpec spec = fixture_from_json(read_json(fixture_path));
    Fixture fx = build_fixture(spec);
    attach_reference(fx, reference_from_json(read_json(reference_path)));
    const Trace a = trace_from_json(read_json(trace_a));
    const Trace b = trace_from_json(read_json(trace_b));
    if (a.x.empty() || b.x.empty() || a.x[0].size() != b.x[0].size())
        throw std::invalid_argument("compare: traces are not from the same fixture");
    write_file(out_path, compare_to_csv(a, b, fx.problem));
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"proxcert: proximal-gradient solvers with certificate suites"};
    app.require_subcommand(1);

    // gen
    FixtureSpec spec;
    std::string gen_out, gen_name = "fixture", gen_config;
    CLI::App* gen = app.add_subcommand("gen", "generate a problem fixture + reference optimum");
    gen->add_option("--config", gen_config, "JSON config file (flags win)");
    gen->add_option("--kind", spec.kind, "quadratic|lasso|box|nonneg|logistic");
    gen->add_option("--n", spec.n, "dimension");
    gen->add_option("--mu", spec.mu, "strong convexity modulus");
    gen->add_option("--L", spec.lip, "smoothness constant");
    gen->add_option("--lambda", spec.lambda, "l1 weight");
    gen->add_option("--lo", spec.lo, "box lower bound");
    gen->add_option("--hi", spec.hi, "box upper bound");
    gen->add_option("--m", spec.m, "logistic sample count");
    gen->add_option("--seed", spec.seed, "64-bit seed");
    gen->add_option("--name", gen_name, "fixture file stem");
    gen->add_option("--out", gen_out, "output directory (default $PROXCERT_OUT or .)");

    // run
    RunArgs run_args;
    std::string run_config;
    CLI::App* run = app.add_subcommand("run", "run a solver and certificate checks");
    run->add_option("--config", run_config, "JSON config file (flags win)");
    run->add_option("--fixture", run_args.fixture_path, "problem JSON")->required();
    run->add_option("--reference", run_args.reference_path, "reference JSON");
    run->add_option("--solver", run_args.solver, "pgd|fgm|apg");
    run->add_option("--eta", run_args.eta, "pgd step factor, t = eta/L, eta in (0,1]");
    run->add_option("--K", run_args.K, "iteration count");
    run->add_option("--check", run_args.checks, "comma list of certificate checks");
    run->add_option("--samples", run_args.samples, "states per sampled check");
    run->add_option("--x0", run_args.x0_mode, "zeros|ones|seeded");
    run->add_option("--out-prefix", run_args.out_prefix, "output file prefix");

    // compare
    std::string cmp_a, cmp_b, cmp_fixture, cmp_reference, cmp_out = "compare.csv";
    CLI::App* cmp = app.add_subcommand("compare", "solver-vs-solver rate comparison CSV");
    cmp->add_option("--trace-a", cmp_a, "first trace JSON")->required();
    cmp->add_option("--trace-b", cmp_b, "second trace JSON")->required();
    cmp->add_option("--fixture", cmp_fixture, "problem JSON")->required();
    cmp->add_option("--reference", cmp_reference, "reference JSON")->required();
    cmp->add_option("--out", cmp_out, "output CSV path");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) apply_config(gen, gen_config);
        if (run->parsed()) apply_config(run, run_config);
        if (gen->parsed()) return cmd_gen(spec, output_root(gen_out), gen_name);
        if (run->parsed()) return cmd_run(run_args);
        if (cmp->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_fixture, cmp_reference, cmp_out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
