#include "l2p/norms.hpp"

#include <cmath>
#include <limits>

namespace l2p {

WeightDiagonal::WeightDiagonal(Eigen::VectorXd entries, double epsilon)
    : d_(std::move(entries)), eps_(epsilon) {
    if (d_.size() < 1) throw ShapeError("WeightDiagonal: empty diagonal");
    if (eps_ < 0.0) throw std::domain_error("WeightDiagonal: epsilon must be >= 0");
    for (Eigen::Index i = 0; i < d_.size(); ++i) {
        // +inf marks an InvertZero-pinned row; anything else must be positive finite.
        if (std::isnan(d_[i]) || d_[i] <= 0.0)
            throw std::invalid_argument("WeightDiagonal: entries must be positive");
    }
}

WeightDiagonal WeightDiagonal::identity(Eigen::Index m) {
    return WeightDiagonal(Eigen::VectorXd::Ones(m), 0.0);
}

Eigen::VectorXd WeightDiagonal::inverse() const {
    return d_.cwiseInverse();
}

Eigen::VectorXd row_l2_norms(const DenseMatrix& y) {
    return y.mat().rowwise().norm();
}

double l2p_power(const DenseMatrix& y, Exponent p) {
    const Eigen::VectorXd norms = row_l2_norms(y);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < norms.size(); ++i)
        acc += std::pow(norms[i], p.value());
    return acc;
}

WeightDiagonal build_weights(const DenseMatrix& y, Exponent p, double epsilon,
                             DegeneratePolicy policy) {
    if (epsilon < 0.0) throw std::domain_error("build_weights: epsilon must be >= 0");
    const double pv = p.value();
    const Eigen::VectorXd norms = row_l2_norms(y);
    Eigen::VectorXd d(norms.size());
    for (Eigen::Index i = 0; i < norms.size(); ++i) {
        const double sq = norms[i] * norms[i] + epsilon;
        if (sq == 0.0) {
            if (policy == DegeneratePolicy::InvertZero) {
                d[i] = std::numeric_limits<double>::infinity();
                continue;
            }
            throw DegenerateRowError("build_weights: zero row " + std::to_string(i) +
                                     " with epsilon = 0");
        }
        d[i] = pv / (2.0 * std::pow(sq, (2.0 - pv) / 2.0));
    }
    return WeightDiagonal(std::move(d), epsilon);
}

double phi(double t, Exponent p) {
    if (!(t > 0.0)) throw std::domain_error("phi: t must be positive");
    const double pv = p.value();
    return 2.0 / (2.0 - pv) * t - pv / (2.0 - pv) * std::pow(t, 2.0 / pv) - 1.0;
}

}  // namespace l2p
