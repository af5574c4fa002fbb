#include "l2p/solver.hpp"

#include <cmath>
#include <limits>

namespace l2p {

ConstrainedProblem::ConstrainedProblem(DenseMatrix M, DenseMatrix B, Exponent p)
    : M_(std::move(M)), B_(std::move(B)), p_(p) {
    const Eigen::Index n = M_.rows();
    const Eigen::Index m = M_.cols();
    if (m < n)
        throw ShapeError("ConstrainedProblem: M must have cols >= rows (underdetermined)");
    if (B_.rows() != n)
        throw ShapeError("ConstrainedProblem: B.rows must equal M.rows");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M_.mat());
    if (qr.rank() < n)
        throw SingularSystemError("ConstrainedProblem: M is numerically rank deficient");
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> iterate_step(const ConstrainedProblem& problem,
                                                         const WeightDiagonal& D) {
    const Eigen::MatrixXd& M = problem.M();
    if (D.size() != M.cols())
        throw ShapeError("iterate_step: weight diagonal length must equal M.cols");
    const Eigen::VectorXd dinv = D.inverse();
    const Eigen::MatrixXd DinvMt = dinv.asDiagonal() * M.transpose();  // m x n
    const Eigen::MatrixXd G = M * DinvMt;                              // n x n, SPD
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success)
        throw SingularSystemError("iterate_step: M D^{-1} M^T is not positive definite");
    const Eigen::VectorXd L_diag = llt.matrixLLT().diagonal();
    if (L_diag.minCoeff() <= L_diag.maxCoeff() * 1e-14)
        throw SingularSystemError("iterate_step: M D^{-1} M^T is numerically singular");
    const Eigen::MatrixXd T = llt.solve(problem.B());
    return {DinvMt * T, 2.0 * T};
}

double kkt_residual(const ConstrainedProblem& problem, const DenseMatrix& Y,
                    const DenseMatrix& lambda, double epsilon) {
    const double pv = problem.p().value();
    const Eigen::VectorXd norms = row_l2_norms(Y);
    Eigen::MatrixXd R = -problem.M().transpose() * lambda.mat();
    for (Eigen::Index i = 0; i < norms.size(); ++i) {
        const double sq = norms[i] * norms[i] + epsilon;
        // An exactly zero row contributes nothing to 2 D Y (the smoothed limit).
        if (sq == 0.0) continue;
        const double w = pv / std::pow(sq, (2.0 - pv) / 2.0);
        R.row(i) += w * Y.mat().row(i);
    }
    return R.norm();
}

double relative_reduction(double obj_prev, double obj_next) {
    if (!(obj_prev > 0.0))
        throw std::domain_error("relative_reduction: previous objective must be positive");
    return (obj_prev - obj_next) / obj_prev;
}

Solution solve(const ConstrainedProblem& problem, const SolverConfig& config) {
    if (config.max_iters < 1) throw std::invalid_argument("solve: max_iters must be >= 1");
    if (!(config.tol_rho > 0.0)) throw std::invalid_argument("solve: tol_rho must be > 0");

    const Eigen::Index m = problem.variable_rows();
    const double zero_tol = degenerate_threshold(std::max(config.epsilon, 1e-30));

    Solution sol;
    if (config.record_trace) sol.trace.emplace();

    WeightDiagonal D = WeightDiagonal::identity(m);
    double prev_obj = std::numeric_limits<double>::quiet_NaN();

    for (int k = 1; k <= config.max_iters; ++k) {
        auto [Y, lambda] = iterate_step(problem, D);
        const double obj = l2p_power(Y, problem.p());

        double rho = std::numeric_limits<double>::infinity();
        if (k > 1) rho = prev_obj > 0.0 ? relative_reduction(prev_obj, obj) : 0.0;

        sol.Y = std::move(Y);
        sol.lambda = std::move(lambda);
        sol.iterations = k;
        sol.objective = obj;

        if (config.iterate_observer) config.iterate_observer(k, sol.Y);

        if (sol.trace) {
            TraceRecord rec;
            rec.k = k;
            rec.objective = obj;
            rec.rho = rho;
            rec.kkt_residual = kkt_residual(problem, sol.Y, sol.lambda, config.epsilon);
            rec.zero_row_count =
                static_cast<int>((row_l2_norms(sol.Y).array() <= zero_tol).count());
            sol.trace->records.push_back(rec);
        }

        if (rho <= config.tol_rho || obj == 0.0) {
            sol.converged = true;
            return sol;
        }

        prev_obj = obj;
        D = build_weights(sol.Y, problem.p(), config.epsilon, config.degenerate_policy);
    }
    return sol;
}

}  // namespace l2p
