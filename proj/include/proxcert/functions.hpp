#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "proxcert/problem.hpp"
#include "proxcert/rng.hpp"

namespace proxcert {

// ---------------------------------------------------------------------------
// Smooth functions
// ---------------------------------------------------------------------------

// f(x) = 0.5 <Ax, x> - <b, x>, A symmetric PSD with lambda_min = mu,
// lambda_max = lip fixed at construction.
struct QuadraticSmooth {
    Mat A;
    Vec b;
    double mu = 0.0;
    double lip = 1.0;

    int dim() const { return static_cast<int>(b.size()); }

    double eval(const Vec& x) const { return 0.5 * x.dot(A * x) - b.dot(x); }
    Vec grad(const Vec& x) const { return A * x - b; }

    SmoothOracle oracle() const {
        auto self = std::make_shared<QuadraticSmooth>(*this);
        SmoothOracle o;
        o.eval = [self](const Vec& x) { return self->eval(x); };
        o.grad = [self](const Vec& x) { return self->grad(x); };
        o.mu = mu;
        o.lip = lip;
        o.dim = dim();
        return o;
    }
};

// A = Q diag(lambda) Q^T with random orthogonal Q, lambda pinned to
// {mu, ..., lip}; deterministic given the seed.
inline QuadraticSmooth make_quadratic(int n, double mu, double lip, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("make_quadratic: n must be >= 1");
    if (mu < 0.0 || !(lip > 0.0) || mu > lip)
        throw std::invalid_argument("make_quadratic: need 0 <= mu <= lip, lip > 0");
    if (n == 1 && mu != lip)
        throw std::invalid_argument("make_quadratic: n = 1 forces mu == lip");

    Rng rng(seed);
    Vec lambda(n);
    lambda[0] = mu;
    lambda[n - 1] = lip;
    for (int i = 1; i + 1 < n; ++i) lambda[i] = rng.uniform(mu, lip);

    QuadraticSmooth q;
    if (n == 1) {
        q.A = Mat::Constant(1, 1, lip);
    } else {
        const Mat raw = rng.gaussian_mat(n, n);
        Eigen::HouseholderQR<Mat> qr(raw);
        Mat Q = qr.householderQ();
        const Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int i = 0; i < n; ++i)
            if (R(i, i) < 0.0) Q.col(i) *= -1.0;  // sign fix for determinism
        q.A = Q * lambda.asDiagonal() * Q.transpose();
        q.A = 0.5 * (q.A + q.A.transpose()).eval();
    }
    q.b = rng.gaussian_vec(n);
    q.mu = mu;
    q.lip = lip;
    return q;
}

// f(x) = (1/m) sum_i log(1 + exp(-y_i <d_i, x>)); mu = 0,
// lip = ||D||_op^2 / (4m).
struct LogisticSmooth {
    Mat D;   // m x n
    Vec y;   // labels in {-1, +1}
    double lip = 1.0;

    int dim() const { return static_cast<int>(D.cols()); }

    static double log1pexp(double u) {
        // log(1 + e^u), overflow-safe
        return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
    }

    double eval(const Vec& x) const {
        const Vec z = (D * x).cwiseProduct(y);
        double s = 0.0;
        for (int i = 0; i < z.size(); ++i) s += log1pexp(-z[i]);
        return s / static_cast<double>(D.rows());
    }

    Vec grad(const Vec& x) const {
        const Vec z = (D * x).cwiseProduct(y);
        Vec w(z.size());
        for (int i = 0; i < z.size(); ++i) w[i] = -y[i] / (1.0 + std::exp(z[i]));
        return D.transpose() * w / static_cast<double>(D.rows());
    }

    SmoothOracle oracle() const {
        auto self = std::make_shared<LogisticSmooth>(*this);
        SmoothOracle o;
        o.eval = [self](const Vec& x) { return self->eval(x); };
        o.grad = [self](const Vec& x) { return self->grad(x); };
        o.mu = 0.0;
        o.lip = lip;
        o.dim = dim();
        return o;
    }
};

// The first n data rows are duplicated with both labels so the data set is
// never separable and the minimizer exists; remaining rows are generic.
inline LogisticSmooth make_logistic(int m, int n, std::uint64_t seed) {
    if (n < 1 || m < 2 * n + 1)
        throw std::invalid_argument("make_logistic: need n >= 1 and m >= 2n + 1");
    Rng rng(seed);
    LogisticSmooth f;
    f.D.resize(m, n);
    f.y.resize(m);
    for (int i = 0; i < n; ++i) {
        const Vec d = rng.gaussian_vec(n);
        f.D.row(i) = d.transpose();
        f.y[i] = 1.0;
        f.D.row(n + i) = d.transpose();
        f.y[n + i] = -1.0;
    }
    for (int i = 2 * n; i < m; ++i) {
        f.D.row(i) = rng.gaussian_vec(n).transpose();
        f.y[i] = rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    }
    const double opnorm = f.D.jacobiSvd().singularValues()[0];
    f.lip = opnorm * opnorm / (4.0 * static_cast<double>(m));
    return f;
}

// ---------------------------------------------------------------------------
// Exact subdifferential distances for structured g
// ---------------------------------------------------------------------------

// d(0, w + d(lambda ||.||_1)(x)), coordinatewise closed form.
inline double subgrad_dist_l1(double lambda, const Vec& x, const Vec& w) {
    if (lambda < 0.0) throw std::invalid_argument("subgrad_dist_l1: lambda must be >= 0");
    double s2 = 0.0;
    for (int i = 0; i < x.size(); ++i) {
        double c;
        if (x[i] != 0.0) {
            c = w[i] + lambda * (x[i] > 0.0 ? 1.0 : -1.0);
        } else {
            c = std::max(std::abs(w[i]) - lambda, 0.0);
        }
        s2 += c * c;
    }
    return std::sqrt(s2);
}

// d(0, w + N_Q(x)) for the box Q = [lo, hi]; x must be feasible. The normal
// cone is a coordinatewise product, so the distance separates.
inline double subgrad_dist_box(const Vec& lo, const Vec& hi, const Vec& x, const Vec& w) {
    double s2 = 0.0;
    for (int i = 0; i < x.size(); ++i) {
        if (x[i] < lo[i] || x[i] > hi[i])
            throw std::invalid_argument("subgrad_dist_box: infeasible point");
        double c;
        if (lo[i] == hi[i]) {
            c = 0.0;  // normal cone is all of R
        } else if (x[i] == lo[i]) {
            c = std::max(-w[i], 0.0);  // N = (-inf, 0]
        } else if (x[i] == hi[i]) {
            c = std::max(w[i], 0.0);   // N = [0, inf)
        } else {
            c = std::abs(w[i]);        // N = {0}
        }
        s2 += c * c;
    }
    return std::sqrt(s2);
}

// ---------------------------------------------------------------------------
// Structured nonsmooth functions with closed-form prox
// ---------------------------------------------------------------------------

struct StructuredNonsmooth {
    ProxKind kind = ProxKind::zero;
    int n = 0;
    double lambda = 0.0;  // l1 weight
    Vec lo, hi;           // box bounds (entries may be +-inf)

    static StructuredNonsmooth make_zero(int n) {
        StructuredNonsmooth g;
        g.kind = ProxKind::zero;
        g.n = n;
        return g;
    }

    static StructuredNonsmooth make_l1(int n, double lambda) {
        if (lambda < 0.0) throw std::invalid_argument("make_l1: lambda must be >= 0");
        StructuredNonsmooth g;
        g.kind = ProxKind::l1;
        g.n = n;
        g.lambda = lambda;
        return g;
    }

    static StructuredNonsmooth make_box(int n, const Vec& lo, const Vec& hi) {
        for (int i = 0; i < n; ++i)
            if (!(lo[i] <= hi[i])) throw std::invalid_argument("make_box: need lo <= hi");
        StructuredNonsmooth g;
        g.kind = ProxKind::box;
        g.n = n;
        g.lo = lo;
        g.hi = hi;
        return g;
    }

    static StructuredNonsmooth make_box(int n, double lo, double hi) {
        return make_box(n, Vec::Constant(n, lo), Vec::Constant(n, hi));
    }

    static StructuredNonsmooth make_nonneg(int n) {
        StructuredNonsmooth g = make_box(n, 0.0, std::numeric_limits<double>::infinity());
        g.kind = ProxKind::nonneg;
        return g;
    }

    double eval(const Vec& x) const {
        switch (kind) {
            case ProxKind::zero:
                return 0.0;
            case ProxKind::l1:
                return lambda * x.lpNorm<1>();
            case ProxKind::box:
            case ProxKind::nonneg:
                for (int i = 0; i < n; ++i)
                    if (x[i] < lo[i] || x[i] > hi[i])
                        return std::numeric_limits<double>::infinity();
                return 0.0;
            default:
                throw std::invalid_argument("StructuredNonsmooth: unknown kind");
        }
    }

    Vec prox(const Vec& v, double t) const {
        switch (kind) {
            case ProxKind::zero:
                return v;
            case ProxKind::l1: {
                Vec z(v.size());
                const double th = t * lambda;
                for (int i = 0; i < v.size(); ++i) {
                    if (v[i] > th)
                        z[i] = v[i] - th;
                    else if (v[i] < -th)
                        z[i] = v[i] + th;
                    else
                        z[i] = 0.0;
                }
                return z;
            }
            case ProxKind::box:
            case ProxKind::nonneg: {
                Vec z(v.size());
                for (int i = 0; i < v.size(); ++i) z[i] = std::clamp(v[i], lo[i], hi[i]);
                return z;
            }
            default:
                throw std::invalid_argument("StructuredNonsmooth: unknown kind");
        }
    }

    double subgrad_dist(const Vec& x, const Vec& w) const {
        switch (kind) {
            case ProxKind::zero:
                return w.norm();
            case ProxKind::l1:
                return subgrad_dist_l1(lambda, x, w);
            case ProxKind::box:
            case ProxKind::nonneg:
                return subgrad_dist_box(lo, hi, x, w);
            default:
                throw std::invalid_argument("StructuredNonsmooth: unknown kind");
        }
    }

    // A feasible representative (used when sampling states for indicator g).
    Vec project(const Vec& x) const {
        if (kind == ProxKind::box || kind == ProxKind::nonneg) return prox(x, 1.0);
        return x;
    }

    ProxOracle oracle() const {
        auto self = std::make_shared<StructuredNonsmooth>(*this);
        ProxOracle o;
        o.eval = [self](const Vec& x) { return self->eval(x); };
        o.prox = [self](const Vec& v, double t) { return self->prox(v, t); };
        o.subgrad_dist = [self](const Vec& x, const Vec& w) { return self->subgrad_dist(x, w); };
        o.kind = kind;
        return o;
    }
};

}  // namespace proxcert
