#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace proxcert {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// One-sided inequality convention used by every verifier: LHS >= RHS "holds"
// when LHS - RHS >= -(eps_abs + eps_rel * max(|LHS|, |RHS|)).
inline constexpr double kEpsAbs = 1e-10;
inline constexpr double kEpsRel = 1e-8;

inline double ineq_tol(double lhs, double rhs) {
    return kEpsAbs + kEpsRel * std::max(std::abs(lhs), std::abs(rhs));
}

inline bool holds_geq(double lhs, double rhs) {
    return lhs - rhs >= -ineq_tol(lhs, rhs);
}

inline bool is_finite(const Vec& v) { return v.allFinite(); }

// Thrown when a certificate is evaluated outside the hypothesis of the
// statement it checks (e.g. refined descent with t > 1/L).
struct out_of_hypothesis : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown when an operation needs a reference optimum that the problem
// does not carry.
struct requires_reference : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when the reference solver cannot reach its residual target.
struct no_reference : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a 1-D bracket passed to the grid oracle does not contain
// the minimizer.
struct bracket_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace proxcert
