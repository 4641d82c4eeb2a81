#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "proxcert/certificates.hpp"
#include "proxcert/fixtures.hpp"
#include "proxcert/oracles.hpp"
#include "proxcert/solvers.hpp"

namespace proxcert {

using json = nlohmann::json;

inline constexpr const char* kFixtureSchema = "proxcert-fixture-v1";
inline constexpr const char* kReferenceSchema = "proxcert-reference-v1";
inline constexpr const char* kTraceSchema = "proxcert-trace-v1";
inline constexpr const char* kReportSchema = "proxcert-report-v1";
inline constexpr const char* kTraceCsvHeader = "k,gnorm,phi_x,phi_y,wall_seconds";
inline constexpr const char* kCompareCsvHeader =
    "k,gnorm_a,gnorm_b,min_gnorm_sq_a,min_gnorm_sq_b,env_a,env_b";

// --- hex-float encoding: bit-exact textual round trips -----------------

inline std::string to_hex(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", x);
    return buf;
}

inline double from_hex(const std::string& s) {
    return std::strtod(s.c_str(), nullptr);
}

inline json vec_to_json(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(to_hex(v[i]));
    return a;
}

inline Vec vec_from_json(const json& a) {
    Vec v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = from_hex(a[i].get<std::string>());
    return v;
}

inline json vecs_to_json(const std::vector<Vec>& vs) {
    json a = json::array();
    for (const Vec& v : vs) a.push_back(vec_to_json(v));
    return a;
}

inline std::vector<Vec> vecs_from_json(const json& a) {
    std::vector<Vec> vs;
    vs.reserve(a.size());
    for (const auto& e : a) vs.push_back(vec_from_json(e));
    return vs;
}

inline json scalars_to_json(const std::vector<double>& xs) {
    json a = json::array();
    for (double x : xs) a.push_back(to_hex(x));
    return a;
}

inline std::vector<double> scalars_from_json(const json& a) {
    std::vector<double> xs;
    xs.reserve(a.size());
    for (const auto& e : a) xs.push_back(from_hex(e.get<std::string>()));
    return xs;
}

// --- fixture / reference ------------------------------------------------

inline json fixture_to_json(const FixtureSpec& s) {
    return json{{"schema", kFixtureSchema}, {"kind", s.kind},       {"n", s.n},
                {"mu", to_hex(s.mu)},       {"lip", to_hex(s.lip)}, {"lambda", to_hex(s.lambda)},
                {"lo", to_hex(s.lo)},       {"hi", to_hex(s.hi)},   {"m", s.m},
                {"seed", s.seed}};
}

inline FixtureSpec fixture_from_json(const json& j) {
    if (j.value("schema", "") != kFixtureSchema)
        throw std::invalid_argument("fixture_from_json: unexpected schema");
    FixtureSpec s;
    s.kind = j.at("kind").get<std::string>();
    s.n = j.at("n").get<int>();
    s.mu = from_hex(j.at("mu").get<std::string>());
    s.lip = from_hex(j.at("lip").get<std::string>());
    s.lambda = from_hex(j.at("lambda").get<std::string>());
    s.lo = from_hex(j.at("lo").get<std::string>());
    s.hi = from_hex(j.at("hi").get<std::string>());
    s.m = j.at("m").get<int>();
    s.seed = j.at("seed").get<std::uint64_t>();
    return s;
}

inline json reference_to_json(const ReferenceSolution& r) {
    return json{{"schema", kReferenceSchema},
                {"x_star", vec_to_json(r.x_star)},
                {"phi_bar", to_hex(r.phi_bar)},
                {"residual", to_hex(r.residual)}};
}

inline ReferenceSolution reference_from_json(const json& j) {
    if (j.value("schema", "") != kReferenceSchema)
        throw std::invalid_argument("reference_from_json: unexpected schema");
    ReferenceSolution r;
    r.x_star = vec_from_json(j.at("x_star"));
    r.phi_bar = from_hex(j.at("phi_bar").get<std::string>());
    r.residual = from_hex(j.at("residual").get<std::string>());
    return r;
}

// --- trace --------------------------------------------------------------

inline const char* solver_name(SolverKind k) {
    switch (k) {
        case SolverKind::pgd: return "pgd";
        case SolverKind::fgm: return "fgm";
        case SolverKind::apg: return "apg";
    }
    return "?";
}

inline SolverKind solver_from_name(const std::string& s) {
    if (s == "pgd") return SolverKind::pgd;
    if (s == "fgm") return SolverKind::fgm;
    if (s == "apg") return SolverKind::apg;
    throw std::invalid_argument("unknown solver '" + s + "'");
}

inline json trace_to_json(const Trace& tr) {
    return json{{"schema", kTraceSchema},
                {"solver", solver_name(tr.kind)},
                {"lip", to_hex(tr.lip)},
                {"eta", to_hex(tr.eta)},
                {"step", to_hex(tr.step)},
                {"x", vecs_to_json(tr.x)},
                {"y", vecs_to_json(tr.y)},
                {"v", vecs_to_json(tr.v)},
                {"g_map", vecs_to_json(tr.g_map)},
                {"gnorm", scalars_to_json(tr.gnorm)},
                {"phi_x", scalars_to_json(tr.phi_x)},
                {"phi_y", scalars_to_json(tr.phi_y)}};
}

inline Trace trace_from_json(const json& j) {
    if (j.value("schema", "") != kTraceSchema)
        throw std::invalid_argument("trace_from_json: unexpected schema");
    Trace tr;
    tr.kind = solver_from_name(j.at("solver").get<std::string>());
    tr.lip = from_hex(j.at("lip").get<std::string>());
    tr.eta = from_hex(j.at("eta").get<std::string>());
    tr.step = from_hex(j.at("step").get<std::string>());
    tr.x = vecs_from_json(j.at("x"));
    tr.y = vecs_from_json(j.at("y"));
    tr.v = vecs_from_json(j.at("v"));
    tr.g_map = vecs_from_json(j.at("g_map"));
    tr.gnorm = scalars_from_json(j.at("gnorm"));
    tr.phi_x = scalars_from_json(j.at("phi_x"));
    tr.phi_y = scalars_from_json(j.at("phi_y"));
    return tr;
}

inline std::string trace_to_csv(const Trace& tr) {
    std::ostringstream os;
    os << "# proxcert-trace-csv v1\n" << kTraceCsvHeader << "\n";
    char buf[64];
    const auto fmt = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return std::string(buf);
    };
    for (std::size_t k = 0; k < tr.x.size(); ++k) {
        os << k << ',' << fmt(tr.gnorm[k]) << ',' << fmt(tr.phi_x[k]) << ',';
        if (k < tr.phi_y.size()) os << fmt(tr.phi_y[k]);
        os << ',';
        if (k < tr.wall_seconds.size()) os << fmt(tr.wall_seconds[k]);
        os << '\n';
    }
    return os.str();
}

// --- check reports ------------------------------------------------------

inline json report_to_json(const CheckReport& r) {
    return json{{"schema", kReportSchema}, {"name", r.name},
                {"samples", r.samples},    {"worst_margin", to_hex(r.worst_margin)},
                {"passed", r.passed},      {"witnesses", r.witnesses},
                {"notes", r.notes}};
}

// --- comparison CSV -----------------------------------------------------

// Per-k mapping norms of two traces on the same fixture plus the
// theoretical envelopes on the squared norms: L(phi^0 - phi_bar)/(eta k)
// for a PGD trace (empty at k = 0) and 192 L Ctilde/((k+1)(k+2)(2k+3))
// for an APG trace under the default schedule.
inline std::string compare_to_csv(const Trace& a, const Trace& b, const CompositeProblem& p) {
    if (!p.ref_opt) throw requires_reference("compare_to_csv: reference optimum required");
    std::ostringstream os;
    os << "# proxcert-compare-csv v1\n" << kCompareCsvHeader << "\n";
    char buf[64];
    const auto fmt = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return std::string(buf);
    };
    const auto envelope = [&](const Trace& tr, std::size_t k) -> std::string {
        const double kk = static_cast<double>(k);
        if (tr.kind == SolverKind::pgd) {
            if (k == 0) return "";  // division by k; documented convention
            return fmt(tr.lip * (tr.phi_x[0] - p.ref_opt->phi_bar) / (tr.eta * kk));
        }
        if (tr.kind == SolverKind::apg) {
            const Schedule sched = default_schedule(tr.lip);
            const double ct = apg_c_tilde(tr, p, sched);
            return fmt(192.0 * tr.lip * ct / ((kk + 1.0) * (kk + 2.0) * (2.0 * kk + 3.0)));
        }
        return "";
    };
    const std::size_t rows = std::max(a.x.size(), b.x.size());
    double min_a = std::numeric_limits<double>::infinity();
    double min_b = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < rows; ++k) {
        os << k << ',';
        if (k < a.x.size()) {
            min_a = std::min(min_a, a.gnorm[k] * a.gnorm[k]);
            os << fmt(a.gnorm[k]);
        }
        os << ',';
        if (k < b.x.size()) {
            min_b = std::min(min_b, b.gnorm[k] * b.gnorm[k]);
            os << fmt(b.gnorm[k]);
        }
        os << ',' << (k < a.x.size() ? fmt(min_a) : "") << ','
           << (k < b.x.size() ? fmt(min_b) : "") << ','
           << (k < a.x.size() ? envelope(a, k) : "") << ','
           << (k < b.x.size() ? envelope(b, k) : "") << '\n';
    }
    return os.str();
}

// --- small file helpers -------------------------------------------------

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json read_json(const std::string& path) { return json::parse(read_file(path)); }

}  // namespace proxcert
