#pragma once

#include <chrono>
#include <functional>
#include <vector>

#include "proxcert/problem.hpp"

namespace proxcert {

// Scalar sequences driving the accelerated scheme and its potential:
//   b_0 = B_0, b_k = B_k - B_{k-1} (k >= 1), B strictly increasing,
//   a_k <= (B_k - b_k^2) / (2 lip) for k >= 1.
struct Schedule {
    std::function<double(int)> a;
    std::function<double(int)> b;
    std::function<double(int)> B;
    double lip = 1.0;
};

inline void validate_schedule(const Schedule& s, int K) {
    if (!s.a || !s.b || !s.B || !(s.lip > 0.0))
        throw std::invalid_argument("schedule: missing sequence or nonpositive lip");
    if (!holds_geq(s.b(0), s.B(0)) || !holds_geq(s.B(0), s.b(0)))
        throw std::invalid_argument("schedule: b(0) != B(0)");
    for (int k = 0; k <= K; ++k) {
        if (!(s.B(k) > 0.0) || !(s.b(k) > 0.0) || s.a(k) < 0.0)
            throw std::invalid_argument("schedule: sign constraint violated");
        if (k >= 1) {
            if (!(s.B(k) > s.B(k - 1)))
                throw std::invalid_argument("schedule: B not strictly increasing");
            const double diff = s.B(k) - s.B(k - 1);
            if (std::abs(s.b(k) - diff) > ineq_tol(s.b(k), diff))
                throw std::invalid_argument("schedule: b(k) != B(k) - B(k-1)");
            const double cap = (s.B(k) - s.b(k) * s.b(k)) / (2.0 * s.lip);
            if (!holds_geq(cap, s.a(k)))
                throw std::invalid_argument("schedule: a(k) exceeds (B(k) - b(k)^2)/(2 lip)");
        }
    }
}

// b_k = (k+1)/4, B_k = (k+1)(k+2)/8, a_k = (k+1)^2 / (32 lip); the a_k
// formula is extended down to k = 0.
inline Schedule default_schedule(double lip) {
    if (!(lip > 0.0)) throw std::invalid_argument("default_schedule: lip must be positive");
    Schedule s;
    s.lip = lip;
    s.a = [lip](int k) { return (k + 1.0) * (k + 1.0) / (32.0 * lip); };
    s.b = [](int k) { return (k + 1.0) / 4.0; };
    s.B = [](int k) { return (k + 1.0) * (k + 2.0) / 8.0; };
    return s;
}

enum class SolverKind { pgd, fgm, apg };

// Full per-iteration record of a run. Everything the certificate layer
// needs is stored here so checks never re-run the solver.
struct Trace {
    SolverKind kind = SolverKind::pgd;
    double lip = 1.0;
    double eta = 1.0;     // pgd only
    double step = 1.0;    // the fixed step size used for the mapping
    std::vector<Vec> x;   // x^k, k = 0..K
    std::vector<Vec> y;   // y^k (apg only)
    std::vector<Vec> v;   // v^k (fgm/apg; one extra entry v^{K+1})
    std::vector<Vec> g_map;       // G(x^k, step) (pgd/apg) or grad f(x^k) (fgm)
    std::vector<double> gnorm;    // ||g_map[k]||
    std::vector<double> phi_x;    // phi(x^k) (pgd/fgm: f only when g == 0)
    std::vector<double> phi_y;    // phi(y^k) (apg only)
    std::vector<double> wall_seconds;  // cumulative time at iteration k

    int iterations() const { return static_cast<int>(x.size()) - 1; }
};

// Proximal gradient descent with constant step t = eta / L, 0 < eta <= 1.
// Records x^k, ||G(x^k, t)|| and phi(x^k) for k = 0..K.
inline Trace pgd_run(const CompositeProblem& p, const Vec& x0, double eta, int K,
                     double stop_tol = 0.0) {
    if (!(eta > 0.0) || eta > 1.0)
        throw std::invalid_argument("pgd_run: eta must lie in (0, 1]");
    if (K < 1) throw std::invalid_argument("pgd_run: K must be >= 1");

    const double t = eta / p.f.lip;
    Trace tr;
    tr.kind = SolverKind::pgd;
    tr.lip = p.f.lip;
    tr.eta = eta;
    tr.step = t;

    const auto start = std::chrono::steady_clock::now();
    Vec x = x0;
    for (int k = 0; k <= K; ++k) {
        const StepRecord rec = pg_map(p, x, t);
        tr.x.push_back(x);
        tr.g_map.push_back(rec.g_map);
        tr.gnorm.push_back(rec.g_map.norm());
        tr.phi_x.push_back(p.phi(x));
        tr.wall_seconds.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        if (stop_tol > 0.0 && tr.gnorm.back() <= stop_tol) break;
        x = rec.x_plus;
    }
    return tr;
}

// Fast gradient method on a smooth f (no prox):
//   v^k = v^{k-1} - (b_{k-1}/L) grad f(x^{k-1})
//   x^k = (B_{k-1}/B_k)(x^{k-1} - (1/L) grad f(x^{k-1})) + (b_k/B_k) v^k
inline Trace fgm_run(const SmoothOracle& f, const Vec& x0, const Schedule& sched, int K) {
    if (K < 1) throw std::invalid_argument("fgm_run: K must be >= 1");
    validate_schedule(sched, K + 1);

    const double L = sched.lip;
    Trace tr;
    tr.kind = SolverKind::fgm;
    tr.lip = L;
    tr.step = 1.0 / L;

    const auto start = std::chrono::steady_clock::now();
    Vec x = x0;
    Vec v = x0;
    for (int k = 0; k <= K; ++k) {
        const Vec g = f.grad(x);
        tr.x.push_back(x);
        tr.v.push_back(v);
        tr.g_map.push_back(g);
        tr.gnorm.push_back(g.norm());
        tr.phi_x.push_back(f.eval(x));
        tr.wall_seconds.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

        const Vec y = x - g / L;
        const Vec v_next = v - (sched.b(k) / L) * g;
        if (k < K) {
            x = (sched.B(k) / sched.B(k + 1)) * y + (sched.b(k + 1) / sched.B(k + 1)) * v_next;
        }
        v = v_next;
    }
    tr.v.push_back(v);  // v^{K+1}
    return tr;
}

// Accelerated proximal scheme at fixed t = 1/L:
//   y^{k-1} = x^{k-1} - (1/L) G(x^{k-1})
//   v^k     = v^{k-1} - (b_{k-1}/L) G(x^{k-1})
//   x^k     = (B_{k-1}/B_k) y^{k-1} + (b_k/B_k) v^k
inline Trace apg_run(const CompositeProblem& p, const Vec& x0, const Schedule& sched, int K) {
    if (K < 1) throw std::invalid_argument("apg_run: K must be >= 1");
    validate_schedule(sched, K + 1);

    const double L = sched.lip;
    Trace tr;
    tr.kind = SolverKind::apg;
    tr.lip = L;
    tr.step = 1.0 / L;

    const auto start = std::chrono::steady_clock::now();
    Vec x = x0;
    Vec v = x0;
    for (int k = 0; k <= K; ++k) {
        const StepRecord rec = pg_map(p, x, 1.0 / L);
        const Vec& y = rec.x_plus;  // y^k
        tr.x.push_back(x);
        tr.y.push_back(y);
        tr.v.push_back(v);
        tr.g_map.push_back(rec.g_map);
        tr.gnorm.push_back(rec.g_map.norm());
        tr.phi_x.push_back(p.phi(x));
        tr.phi_y.push_back(p.phi(y));
        tr.wall_seconds.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

        const Vec v_next = v - (sched.b(k) / L) * rec.g_map;
        if (k < K) {
            x = (sched.B(k) / sched.B(k + 1)) * y + (sched.b(k + 1) / sched.B(k + 1)) * v_next;
        }
        v = v_next;
    }
    tr.v.push_back(v);  // v^{K+1}
    return tr;
}

}  // namespace proxcert
