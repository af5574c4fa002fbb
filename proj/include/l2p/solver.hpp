#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "l2p/norms.hpp"

namespace l2p {

/// min ||Y||_{2,p}^p subject to M Y = B, with M n-by-m, m > n, full row rank.
class ConstrainedProblem {
public:
    ConstrainedProblem(DenseMatrix M, DenseMatrix B, Exponent p);

    const Eigen::MatrixXd& M() const { return M_.mat(); }
    const Eigen::MatrixXd& B() const { return B_.mat(); }
    Exponent p() const { return p_; }

    Eigen::Index constraint_count() const { return M_.rows(); }   // n
    Eigen::Index variable_rows() const { return M_.cols(); }      // m
    Eigen::Index target_cols() const { return B_.cols(); }        // c

private:
    DenseMatrix M_;
    DenseMatrix B_;
    Exponent p_;
};

struct SolverConfig {
    int max_iters = 100;
    double tol_rho = 1e-8;
    double epsilon = 1e-12;
    DegeneratePolicy degenerate_policy = DegeneratePolicy::Smoothed;
    bool record_trace = true;
    /// Called with (k, Y_k) after each step; test hook, unset in production use.
    std::function<void(int, const Eigen::MatrixXd&)> iterate_observer;
};

struct TraceRecord {
    int k = 0;
    double objective = 0.0;
    double rho = 0.0;          // +inf for k = 1 (no predecessor)
    double kkt_residual = 0.0;
    int zero_row_count = 0;
};

struct SolverTrace {
    std::vector<TraceRecord> records;
};

struct Solution {
    Eigen::MatrixXd Y;
    Eigen::MatrixXd lambda;   // n-by-c multiplier estimate
    bool converged = false;
    int iterations = 0;
    double objective = 0.0;
    std::optional<SolverTrace> trace;
};

/// One reweighted step: Y = D^{-1} M^T (M D^{-1} M^T)^{-1} B, the exact
/// minimizer of Tr(Y^T D Y) over {M Y = B}, together with the multiplier
/// Lambda = 2 (M D^{-1} M^T)^{-1} B.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> iterate_step(const ConstrainedProblem& problem,
                                                         const WeightDiagonal& D);

/// Full fixed-point iteration starting from D_0 = I. Deterministic for a
/// fixed build; for p < 1 the limit is a local solution tied to that start.
Solution solve(const ConstrainedProblem& problem, const SolverConfig& config = {});

/// Frobenius norm of 2 D(Y) Y - M^T Lambda, with D built from Y at the given
/// smoothing epsilon. Vanishes exactly at fixed points of the iteration.
double kkt_residual(const ConstrainedProblem& problem, const DenseMatrix& Y,
                    const DenseMatrix& lambda, double epsilon);

/// rho_k = (obj_prev - obj_next) / obj_prev, the convergence diagnostic.
double relative_reduction(double obj_prev, double obj_next);

}  // namespace l2p
