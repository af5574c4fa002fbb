#pragma once

#include "l2p/solver.hpp"

namespace l2p {

/// Robust joint-sparse regression:
///   min_X ||A^T X - B||_{2,p}^p + gamma^p ||X||_{2,p}^p
/// with A d-by-n (columns are samples) and B n-by-c.
class RegressionProblem {
public:
    RegressionProblem(DenseMatrix A, DenseMatrix B, double gamma, Exponent p,
                      bool include_bias = false);

    const Eigen::MatrixXd& A() const { return A_.mat(); }
    const Eigen::MatrixXd& B() const { return B_.mat(); }
    double gamma() const { return gamma_; }
    Exponent p() const { return p_; }
    bool include_bias() const { return include_bias_; }

    Eigen::Index feature_count() const { return A_.rows(); }  // d (incl. bias row if any)
    Eigen::Index sample_count() const { return A_.cols(); }   // n
    Eigen::Index target_cols() const { return B_.cols(); }    // c

private:
    DenseMatrix A_;
    DenseMatrix B_;
    double gamma_;
    Exponent p_;
    bool include_bias_;
};

struct RegressionSolution {
    Eigen::MatrixXd X;   // d x c
    Eigen::MatrixXd E;   // n x c, scaled residual (A^T X - B) / gamma
    double objective = 0.0;
    Solution solver_solution;
};

/// Append a constant-1 feature row to A (bias handling).
Eigen::MatrixXd append_bias_row(const DenseMatrix& A);

/// Assemble the equality-constrained form: M = [A^T | -gamma I_n], same B and p.
/// The -gamma I block makes M full row rank unconditionally.
ConstrainedProblem build_constrained(const RegressionProblem& rp);

/// Split the stacked variable Y = [X; E] back into its blocks.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> split_solution(const Solution& sol,
                                                           Eigen::Index d, Eigen::Index n);

/// J(X) = ||A^T X - B||_{2,p}^p + gamma^p ||X||_{2,p}^p.
double objective(const RegressionProblem& rp, const DenseMatrix& X);

RegressionSolution solve_regression(const RegressionProblem& rp,
                                    const SolverConfig& config = {});

}  // namespace l2p
