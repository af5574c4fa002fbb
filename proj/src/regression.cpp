#include "l2p/regression.hpp"

#include <cmath>

namespace l2p {

RegressionProblem::RegressionProblem(DenseMatrix A, DenseMatrix B, double gamma, Exponent p,
                                     bool include_bias)
    : A_(std::move(A)), B_(std::move(B)), gamma_(gamma), p_(p), include_bias_(include_bias) {
    if (A_.cols() != B_.rows())
        throw ShapeError("RegressionProblem: A.cols must equal B.rows");
    if (!(gamma_ > 0.0))
        throw std::domain_error("RegressionProblem: gamma must be positive");
}

Eigen::MatrixXd append_bias_row(const DenseMatrix& A) {
    Eigen::MatrixXd out(A.rows() + 1, A.cols());
    out.topRows(A.rows()) = A.mat();
    out.bottomRows(1).setOnes();
    return out;
}

ConstrainedProblem build_constrained(const RegressionProblem& rp) {
    const Eigen::Index d = rp.feature_count();
    const Eigen::Index n = rp.sample_count();
    Eigen::MatrixXd M(n, d + n);
    M.leftCols(d) = rp.A().transpose();
    M.rightCols(n) = -rp.gamma() * Eigen::MatrixXd::Identity(n, n);
    return ConstrainedProblem(std::move(M), rp.B(), rp.p());
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> split_solution(const Solution& sol,
                                                           Eigen::Index d, Eigen::Index n) {
    if (sol.Y.rows() != d + n)
        throw ShapeError("split_solution: Y.rows must equal d + n");
    return {sol.Y.topRows(d), sol.Y.bottomRows(n)};
}

double objective(const RegressionProblem& rp, const DenseMatrix& X) {
    if (X.rows() != rp.feature_count() || X.cols() != rp.target_cols())
        throw ShapeError("objective: X must be d x c");
    const double pv = rp.p().value();
    const Eigen::MatrixXd residual = rp.A().transpose() * X.mat() - rp.B();
    return l2p_power(residual, rp.p()) + std::pow(rp.gamma(), pv) * l2p_power(X, rp.p());
}

RegressionSolution solve_regression(const RegressionProblem& rp, const SolverConfig& config) {
    const ConstrainedProblem cp = build_constrained(rp);
    RegressionSolution out;
    out.solver_solution = solve(cp, config);
    auto [X, E] = split_solution(out.solver_solution, rp.feature_count(), rp.sample_count());
    out.X = std::move(X);
    out.E = std::move(E);
    out.objective = objective(rp, out.X);
    return out;
}

}  // namespace l2p
