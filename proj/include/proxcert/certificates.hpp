#pragma once

#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "proxcert/problem.hpp"
#include "proxcert/solvers.hpp"

namespace proxcert {

// Verdict of one numerical check: pass/fail plus the worst signed margin
// LHS - RHS observed across all evaluated inequalities.
struct CheckReport {
    std::string name;
    int samples = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    bool passed = true;
    std::vector<std::string> witnesses;
    std::string notes;

    // Record one "lhs >= rhs" evaluation under the shared tolerance
    // convention.
    void record(const std::string& what, double lhs, double rhs) {
        ++samples;
        const double margin = lhs - rhs;
        worst_margin = std::min(worst_margin, margin);
        if (!holds_geq(lhs, rhs)) {
            passed = false;
            std::ostringstream os;
            os << what << ": lhs=" << lhs << " rhs=" << rhs << " margin=" << margin;
            witnesses.push_back(os.str());
        }
    }

    void merge(const CheckReport& other) {
        samples += other.samples;
        worst_margin = std::min(worst_margin, other.worst_margin);
        passed = passed && other.passed;
        witnesses.insert(witnesses.end(), other.witnesses.begin(), other.witnesses.end());
        if (!other.notes.empty()) notes += (notes.empty() ? "" : "; ") + other.notes;
    }
};

inline double rho_factor(double mu, double lip, double t) {
    return std::max(std::abs(1.0 - lip * t), std::abs(1.0 - mu * t));
}

// ---------------------------------------------------------------------------
// Function-class membership
// ---------------------------------------------------------------------------

// Checks the interpolation inequalities of the class S^{1,1}_{mu,L} on the
// given pairs; for mu = 0 additionally checks the smooth-convex inequality
// and gradient cocoercivity.
inline CheckReport check_function_class(const SmoothOracle& f,
                                        std::span<const std::pair<Vec, Vec>> pairs) {
    if (pairs.empty())
        throw std::invalid_argument("check_function_class: empty pair list");
    CheckReport rep;
    rep.name = "function-class";
    const double mu = f.mu, L = f.lip;
    for (const auto& [x, y] : pairs) {
        const double fx = f.eval(x), fy = f.eval(y);
        const Vec gx = f.grad(x), gy = f.grad(y);
        const Vec dx = x - y;
        const Vec dg = gx - gy;
        const double ndx = dx.norm(), ndg = dg.norm();

        // <gx - gy, x - y> >= muL/(mu+L) |x-y|^2 + 1/(mu+L) |gx-gy|^2
        rep.record("strong-cocoercivity", dg.dot(dx),
                   mu * L / (mu + L) * ndx * ndx + dg.squaredNorm() / (mu + L));

        // f(x) >= f(y) + <gy, x-y> + 1/(2L)|gx-gy|^2
        //              + muL/(2(L-mu)) |x - y - (gx-gy)/L|^2
        if (L - mu > 1e-12 * L) {
            const Vec r = dx - dg / L;
            rep.record("interpolation", fx,
                       fy + gy.dot(dx) + dg.squaredNorm() / (2.0 * L) +
                           mu * L / (2.0 * (L - mu)) * r.squaredNorm());
        } else {
            // mu == L forces the residual to vanish; check that instead of
            // evaluating the singular coefficient.
            const Vec r = dx - dg / L;
            rep.record("interpolation-residual", 1e-8 * std::max(ndx, 1.0), r.norm());
        }

        // mu |x-y| <= |gx-gy| <= L |x-y|
        rep.record("grad-bound-lower", ndg, mu * ndx);
        rep.record("grad-bound-upper", L * ndx, ndg);

        if (mu == 0.0) {
            // smooth-convex lower bound with the gradient-difference term
            rep.record("smooth-lower-bound", fy, fx + gx.dot(y - x) + dg.squaredNorm() / (2.0 * L));
            // cocoercivity of the gradient
            rep.record("cocoercivity", dg.dot(dx), dg.squaredNorm() / (2.0 * L));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// One-step inequalities
// ---------------------------------------------------------------------------

// phi(x) - phi(y - t G(y,t)) >= t(1 - Lt/2) |G(y,t)|^2 + <G(y,t), x-y>
//                               + mu/2 |x-y|^2
inline CheckReport check_ovg(const CompositeProblem& p, const Vec& x, const Vec& y, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("check_ovg: t must be positive");
    CheckReport rep;
    rep.name = "ovg";
    const StepRecord rec = pg_map(p, y, t);
    const double g2 = rec.g_map.squaredNorm();
    const double lhs = p.phi(x) - p.phi(rec.x_plus);
    const double rhs = t * (1.0 - 0.5 * p.f.lip * t) * g2 + rec.g_map.dot(x - y) +
                       0.5 * p.f.mu * (x - y).squaredNorm();
    rep.record("ovg", lhs, rhs);
    return rep;
}

// Full norm-monotonicity chain at one state:
//   |G(x+,t)| <= d(0, dphi(x+)) <= rho(t) |G(x,t)| <= rho(t) d(0, dphi(x))
// plus the tighter |grad f(x+) + s+| <= rho(t) |G(x,t)|.
// The distance links need the exact subgrad_dist of g; without it they are
// skipped (noted in the report) and |G(x+,t)| <= rho(t)|G(x,t)| is checked
// directly.
inline CheckReport check_norm_monotonicity(const CompositeProblem& p, const Vec& x, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("check_norm_monotonicity: t must be positive");
    CheckReport rep;
    rep.name = "norm-monotone";
    const double rho = rho_factor(p.f.mu, p.f.lip, t);

    const StepRecord rec = pg_map(p, x, t);
    const double gn = rec.g_map.norm();
    const double gn_plus = pg_map(p, rec.x_plus, t).g_map.norm();
    const double tight = (p.f.grad(rec.x_plus) + rec.s_plus).norm();
    rep.record("mineq2", rho * gn, tight);

    if (p.g.has_subgrad_dist()) {
        const double d_plus = p.g.subgrad_dist(rec.x_plus, p.f.grad(rec.x_plus));
        rep.record("pgn-link1", d_plus, gn_plus);
        rep.record("pgn-link2", rho * gn, d_plus);
        if (std::isfinite(p.g.eval(x))) {
            const double d_x = p.g.subgrad_dist(x, p.f.grad(x));
            rep.record("pgn-link3", rho * d_x, rho * gn);
        } else {
            rep.notes = "d(0,dphi(x)) infinite (x outside dom g); outer link trivial";
        }
    } else {
        rep.record("pgn-direct", rho * gn, gn_plus);
        rep.notes = "subgrad_dist unavailable; distance links not evaluated";
    }
    return rep;
}

// phi(x) >= phi(x+) + t/2 |G(x,t)|^2 + t/(2(1-mu t)) |G(x+,t)|^2 for
// 0 < t <= 1/L; also the mu = 0 and g == 0 specializations and the
// comparison against the classical descent lemmas.
inline CheckReport check_refined_descent(const CompositeProblem& p, const Vec& x, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("check_refined_descent: t must be positive");
    if (t > 1.0 / p.f.lip && !holds_geq(1.0 / p.f.lip, t))
        throw out_of_hypothesis("check_refined_descent: requires t <= 1/L");
    CheckReport rep;
    rep.name = "refined-descent";

    const StepRecord rec = pg_map(p, x, t);
    const double g2 = rec.g_map.squaredNorm();
    const double gp2 = pg_map(p, rec.x_plus, t).g_map.squaredNorm();
    const double phi_x = p.phi(x);
    const double phi_plus = p.phi(rec.x_plus);

    double third;
    const double denom = 1.0 - p.f.mu * t;
    if (denom <= 1e-12) {
        // mu t = 1 forces rho(t) = 0 and hence G(x+) = 0; the limit of the
        // third term is 0.
        if (std::sqrt(gp2) > 1e-8)
            throw std::logic_error("check_refined_descent: mu t = 1 but G(x+) != 0");
        third = 0.0;
    } else {
        third = t / (2.0 * denom) * gp2;
    }
    rep.record("sdp", phi_x, phi_plus + 0.5 * t * g2 + third);

    if (p.f.mu == 0.0) {
        rep.record("dp1", phi_x, phi_plus + 0.5 * t * g2 + 0.5 * t * gp2);
        if (p.g.kind == ProxKind::zero) {
            const double n0 = p.f.grad(x).squaredNorm();
            const double n1 = p.f.grad(rec.x_plus).squaredNorm();
            rep.record("dp2", phi_x, phi_plus + 0.5 * t * n0 + 0.5 * t * n1);
        }
    }

    // The refined inequality dominates the classical descent lemmas: its
    // slack never exceeds theirs.
    const double slack_sdp = phi_x - phi_plus - 0.5 * t * g2 - third;
    const double slack_classic =
        phi_x - phi_plus - 0.5 * p.f.lip * (rec.x_plus - x).squaredNorm();
    rep.record("sdp-dominates-classic", slack_classic, slack_sdp);
    return rep;
}

// ---------------------------------------------------------------------------
// Potentials and rates
// ---------------------------------------------------------------------------

// C_k = (eta/L) k |G(x^k, eta/L)|^2 + phi(x^k) - phi_bar along a PGD trace.
inline std::vector<double> pgd_potential(const Trace& tr, const CompositeProblem& p,
                                         double eta) {
    if (tr.kind != SolverKind::pgd)
        throw std::invalid_argument("pgd_potential: trace is not from pgd_run");
    if (!p.ref_opt) throw requires_reference("pgd_potential: problem carries no reference optimum");
    const double phi_bar = p.ref_opt->phi_bar;
    std::vector<double> c;
    c.reserve(tr.x.size());
    for (std::size_t k = 0; k < tr.x.size(); ++k)
        c.push_back(eta / tr.lip * static_cast<double>(k) * tr.gnorm[k] * tr.gnorm[k] +
                    tr.phi_x[k] - phi_bar);
    return c;
}

// Verifies the PGD potential is nonincreasing and the squared-norm rate
// (eta k / L) |G(x^k)|^2 <= phi(x^0) - phi_bar at every k.
inline CheckReport check_pgd_potential(const Trace& tr, const CompositeProblem& p, double eta) {
    const std::vector<double> c = pgd_potential(tr, p, eta);
    CheckReport rep;
    rep.name = "pgd-potential";
    const double gap0 = tr.phi_x[0] - p.ref_opt->phi_bar;
    for (std::size_t k = 1; k < c.size(); ++k)
        rep.record("potential-nonincreasing k=" + std::to_string(k), c[k - 1], c[k]);
    for (std::size_t k = 0; k < c.size(); ++k)
        rep.record("sq-norm-rate k=" + std::to_string(k), gap0,
                   eta * static_cast<double>(k) / tr.lip * tr.gnorm[k] * tr.gnorm[k]);
    return rep;
}

// C_k = sum_{i<=k} a_i |G(x^i)|^2 + B_k (phi(y^k) - phi_bar) along an APG
// trace.
inline std::vector<double> apg_potential(const Trace& tr, const CompositeProblem& p,
                                         const Schedule& sched) {
    if (tr.kind != SolverKind::apg)
        throw std::invalid_argument("apg_potential: trace is not from apg_run");
    if (!p.ref_opt) throw requires_reference("apg_potential: problem carries no reference optimum");
    const double phi_bar = p.ref_opt->phi_bar;
    std::vector<double> c;
    c.reserve(tr.x.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < tr.x.size(); ++k) {
        acc += sched.a(static_cast<int>(k)) * tr.gnorm[k] * tr.gnorm[k];
        c.push_back(acc + sched.B(static_cast<int>(k)) * (tr.phi_y[k] - phi_bar));
    }
    return c;
}

// Per-k telescoping bound
//   C_k - C_{k-1} <= (L/2)(|x* - v^k|^2 - |x* - v^{k+1}|^2), k >= 1,
// and its telescoped consequence C_k <= C-tilde.
inline CheckReport check_apg_potential(const Trace& tr, const CompositeProblem& p,
                                       const Schedule& sched) {
    const std::vector<double> c = apg_potential(tr, p, sched);
    CheckReport rep;
    rep.name = "apg-potential";
    const Vec& x_star = p.ref_opt->x_star;
    const double L = tr.lip;
    for (std::size_t k = 1; k < c.size(); ++k) {
        const double lhs = 0.5 * L * ((x_star - tr.v[k]).squaredNorm() -
                                      (x_star - tr.v[k + 1]).squaredNorm());
        rep.record("telescope k=" + std::to_string(k), lhs, c[k] - c[k - 1]);
    }
    const double c_tilde = sched.a(0) * tr.gnorm[0] * tr.gnorm[0] +
                           sched.b(0) * (tr.phi_y[0] - p.ref_opt->phi_bar) +
                           0.5 * L * (x_star - tr.v[0]).squaredNorm();
    for (std::size_t k = 1; k < c.size(); ++k)
        rep.record("bounded-by-ctilde k=" + std::to_string(k), c_tilde, c[k]);
    return rep;
}

inline double apg_c_tilde(const Trace& tr, const CompositeProblem& p, const Schedule& sched) {
    if (!p.ref_opt) throw requires_reference("apg_c_tilde: problem carries no reference optimum");
    return sched.a(0) * tr.gnorm[0] * tr.gnorm[0] +
           sched.b(0) * (tr.phi_y[0] - p.ref_opt->phi_bar) +
           0.5 * tr.lip * (p.ref_opt->x_star - tr.v[0]).squaredNorm();
}

// Convergence-rate bounds along a trace.
//  - APG: phi(y^k) - phi_bar <= Ctilde/B_k; sum a_i |G|^2 <= Ctilde; and
//    min_{i<=k} |G(x^i)|^2 <= Ctilde / sum_{i<=k} a_i. Under the default
//    schedule the last envelope equals 192 L Ctilde/((k+1)(k+2)(2k+3)) and
//    the partial sums are cross-checked against that closed form.
//  - PGD with g == 0 and eta = 1 (plain gradient descent):
//    |grad f(x^k)|^2 <= 2L (f(x^0) - f*) / (2k+1).
inline CheckReport rate_bounds(const Trace& tr, const CompositeProblem& p,
                               const Schedule& sched) {
    if (!p.ref_opt) throw requires_reference("rate_bounds: problem carries no reference optimum");
    CheckReport rep;
    rep.name = "rates";
    const double phi_bar = p.ref_opt->phi_bar;

    if (tr.kind == SolverKind::apg) {
        if (std::abs(sched.lip - tr.lip) > ineq_tol(sched.lip, tr.lip))
            throw std::invalid_argument("rate_bounds: schedule does not match trace");
        const double ct = apg_c_tilde(tr, p, sched);
        const Schedule def = default_schedule(tr.lip);
        bool is_default = true;
        for (int k : {0, 1, 5, 17}) {
            if (std::abs(sched.a(k) - def.a(k)) > 1e-12 * (1.0 + def.a(k)) ||
                std::abs(sched.B(k) - def.B(k)) > 1e-12 * (1.0 + def.B(k)))
                is_default = false;
        }

        double a_sum = 0.0, g_sum = 0.0, min_g2 = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < tr.x.size(); ++k) {
            const double g2 = tr.gnorm[k] * tr.gnorm[k];
            a_sum += sched.a(static_cast<int>(k));
            g_sum += sched.a(static_cast<int>(k)) * g2;
            min_g2 = std::min(min_g2, g2);
            if (k == 0) continue;
            const double kk = static_cast<double>(k);
            rep.record("objvalue k=" + std::to_string(k), ct / sched.B(static_cast<int>(k)),
                       tr.phi_y[k] - phi_bar);
            rep.record("gradnorm-sum k=" + std::to_string(k), ct, g_sum);
            rep.record("min-gradnorm k=" + std::to_string(k), ct / a_sum, min_g2);
            if (is_default) {
                rep.record("objvalue-poly k=" + std::to_string(k),
                           8.0 * ct / ((kk + 1.0) * (kk + 2.0)), tr.phi_y[k] - phi_bar);
                const double closed = (kk + 1.0) * (kk + 2.0) * (2.0 * kk + 3.0) / (192.0 * tr.lip);
                rep.record("a-sum-identity-lo k=" + std::to_string(k), a_sum, closed);
                rep.record("a-sum-identity-hi k=" + std::to_string(k), closed, a_sum);
                rep.record("min-gradnorm-poly k=" + std::to_string(k),
                           192.0 * tr.lip * ct / ((kk + 1.0) * (kk + 2.0) * (2.0 * kk + 3.0)),
                           min_g2);
            }
        }
    } else if (tr.kind == SolverKind::pgd) {
        if (p.g.kind != ProxKind::zero || tr.eta != 1.0)
            throw std::invalid_argument(
                "rate_bounds: GD baseline bound needs g == 0 and eta = 1");
        const double gap0 = tr.phi_x[0] - phi_bar;
        for (std::size_t k = 0; k < tr.x.size(); ++k) {
            const double bound = 2.0 * tr.lip * gap0 / (2.0 * static_cast<double>(k) + 1.0);
            rep.record("gd-sq-gradnorm k=" + std::to_string(k), bound,
                       tr.gnorm[k] * tr.gnorm[k]);
        }
    }
    return rep;
}

}  // namespace proxcert
