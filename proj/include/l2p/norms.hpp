#pragma once

#include <Eigen/Dense>

#include "l2p/dense_matrix.hpp"

namespace l2p {

/// What to do when a row norm hits zero while building weights.
///  - Strict:     refuse (DegenerateRowError) unless epsilon > 0.
///  - Smoothed:   use p / (2 (||y_i||^2 + eps)^{(2-p)/2}); requires eps > 0 for zero rows.
///  - InvertZero: pin the row by setting the inverse weight to zero (weight = +inf).
enum class DegeneratePolicy { Strict, Smoothed, InvertZero };

/// Diagonal reweighting matrix D with entries p / (2 ||y_i||^{2-p}).
/// Entries are strictly positive; under InvertZero a pinned row carries +inf,
/// whose inverse is an exact IEEE zero.
class WeightDiagonal {
public:
    WeightDiagonal(Eigen::VectorXd entries, double epsilon);

    /// Identity weights (D_0 = I).
    static WeightDiagonal identity(Eigen::Index m);

    const Eigen::VectorXd& entries() const { return d_; }
    double epsilon() const { return eps_; }
    Eigen::Index size() const { return d_.size(); }

    /// Element-wise 1/d. Pinned rows (d = +inf) map to exactly 0.
    Eigen::VectorXd inverse() const;

private:
    Eigen::VectorXd d_;
    double eps_;
};

/// Euclidean norm of each row.
Eigen::VectorXd row_l2_norms(const DenseMatrix& y);

/// ||Y||_{2,p}^p = sum_i ||y_i||_2^p. Equals the l_{2,1} norm when p = 1.
double l2p_power(const DenseMatrix& y, Exponent p);

/// Build D from the rows of Y: entry i = p / (2 (||y_i||^2 + eps)^{(2-p)/2}).
/// With eps = 0 and no zero rows this is the exact reweighting diagonal.
WeightDiagonal build_weights(const DenseMatrix& y, Exponent p, double epsilon,
                             DegeneratePolicy policy = DegeneratePolicy::Smoothed);

/// phi(t) = (2/(2-p)) t - (p/(2-p)) t^{2/p} - 1, the convergence-lemma
/// surrogate gap; phi(t) <= 0 for all t > 0 with equality only at t = 1.
double phi(double t, Exponent p);

/// Row norms at or below this scale count as degenerate for diagnostics.
inline double degenerate_threshold(double epsilon) { return std::sqrt(epsilon); }

}  // namespace l2p
