#include "oracle.hpp"

#include <cmath>
#include <random>

namespace l2p::oracle {

namespace {

double smoothed_objective(const Eigen::MatrixXd& Y, double p, double epsilon) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < Y.rows(); ++i)
        acc += std::pow(Y.row(i).squaredNorm() + epsilon, p / 2.0);
    return acc;
}

}  // namespace

std::pair<Eigen::MatrixXd, double> convex_reference(const ConstrainedProblem& problem,
                                                    const OracleConfig& cfg) {
    if (problem.p().value() != 1.0)
        throw std::invalid_argument("convex_reference: requires p = 1");

    const Eigen::MatrixXd& M = problem.M();
    const Eigen::MatrixXd& B = problem.B();
    const Eigen::LLT<Eigen::MatrixXd> gram(M * M.transpose());
    if (gram.info() != Eigen::Success)
        throw SingularSystemError("convex_reference: M M^T not positive definite");

    // ADMM on the split  min ||Z||_{2,1} + i_{MY=B}(Y)  s.t.  Y = Z.
    // The Y update projects onto the feasible affine set, the Z update is a
    // row-wise block soft threshold, and the scaled dual U accumulates the gap.
    const auto project = [&](const Eigen::MatrixXd& V) -> Eigen::MatrixXd {
        return V - M.transpose() * gram.solve(M * V - B);
    };

    // Fixed penalty: ADMM converges for any rho > 0, and adapting it mid-run
    // was observed to cause limit cycles on small instances.
    const double rho = 1.0;
    Eigen::MatrixXd Z = project(Eigen::MatrixXd::Zero(M.cols(), B.cols()));
    Eigen::MatrixXd U = Eigen::MatrixXd::Zero(M.cols(), B.cols());
    Eigen::MatrixXd Y = Z;
    bool converged = false;

    for (int k = 1; k <= cfg.max_evals; ++k) {
        Y = project(Z - U);
        const Eigen::MatrixXd V = Y + U;
        const Eigen::MatrixXd Z_old = Z;
        for (Eigen::Index i = 0; i < Z.rows(); ++i) {
            const double norm = V.row(i).norm();
            const double scale = norm > 1.0 / rho ? 1.0 - 1.0 / (rho * norm) : 0.0;
            Z.row(i) = scale * V.row(i);
        }
        U += Y - Z;

        const double primal = (Y - Z).norm();
        const double dual = rho * (Z - Z_old).norm();
        if (primal <= cfg.tol * (1.0 + Y.norm()) &&
            dual <= cfg.tol * (1.0 + rho * U.norm())) {
            converged = true;
            break;
        }
    }

    if (!converged)
        throw NonConvergenceError("convex_reference: residuals still large at max_evals");
    return {Y, l2p_power(Y, problem.p())};
}

bool local_descent_check(const ConstrainedProblem& problem, const Eigen::MatrixXd& Y,
                         double radius, int samples, double epsilon, unsigned seed) {
    const Eigen::MatrixXd kernel = Eigen::FullPivLU<Eigen::MatrixXd>(problem.M()).kernel();
    if (kernel.cols() == 0 ||
        (kernel.cols() == 1 && kernel.norm() == 0.0))  // square invertible M
        return true;

    const double p = problem.p().value();
    const double base = smoothed_objective(Y, p, epsilon);
    const double tolerance = 1e-9 * (1.0 + base);

    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int s = 0; s < samples; ++s) {
        Eigen::MatrixXd Z(kernel.cols(), Y.cols());
        for (Eigen::Index i = 0; i < Z.rows(); ++i)
            for (Eigen::Index j = 0; j < Z.cols(); ++j) Z(i, j) = gauss(rng);
        Eigen::MatrixXd N = kernel * Z;
        const double norm = N.norm();
        if (norm < 1e-14) continue;
        N *= radius * std::max(unit(rng), 1e-3) / norm;
        if (smoothed_objective(Y + N, p, epsilon) < base - tolerance) return false;
    }
    return true;
}

}  // namespace l2p::oracle
