#pragma once

#include <Eigen/Dense>

#include "l2p/errors.hpp"

namespace l2p {

/// Validated dense real matrix. Construction rejects empty shapes and
/// non-finite entries, so downstream row-norm arithmetic never sees NaN/Inf.
class DenseMatrix {
public:
    template <typename Derived>
    DenseMatrix(const Eigen::MatrixBase<Derived>& m) : DenseMatrix(Eigen::MatrixXd(m)) {}

    DenseMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
        if (m_.rows() < 1 || m_.cols() < 1)
            throw ShapeError("DenseMatrix: rows and cols must be positive");
        if (!m_.allFinite())
            throw std::invalid_argument("DenseMatrix: non-finite entry");
    }

    Eigen::Index rows() const { return m_.rows(); }
    Eigen::Index cols() const { return m_.cols(); }

    const Eigen::MatrixXd& mat() const { return m_; }
    operator const Eigen::MatrixXd&() const { return m_; }

private:
    Eigen::MatrixXd m_;
};

/// The exponent p of the l_{2,p} pseudo-norm, restricted to (0, 1].
class Exponent {
public:
    explicit Exponent(double p) : p_(p) {
        if (!(p > 0.0) || !(p <= 1.0))
            throw std::domain_error("Exponent: p must lie in (0, 1]");
    }

    double value() const { return p_; }

private:
    double p_;
};

}  // namespace l2p
