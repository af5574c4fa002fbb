#pragma once

#include <random>

#include "l2p/solver.hpp"

namespace l2p::testutil {

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = gauss(rng);
    return m;
}

inline ConstrainedProblem random_problem(Eigen::Index n, Eigen::Index m, Eigen::Index c,
                                         double p, std::mt19937& rng) {
    return ConstrainedProblem(random_matrix(n, m, rng), random_matrix(n, c, rng),
                              Exponent(p));
}

}  // namespace l2p::testutil
