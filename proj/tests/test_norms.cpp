#include <doctest.h>

#include <cmath>
#include <random>

#include "l2p/norms.hpp"

using namespace l2p;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = gauss(rng);
    return m;
}

// Scalar-loop reference, independent of the Eigen implementation path.
double l2p_power_oracle(const Eigen::MatrixXd& y, double p) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
        double sq = 0.0;
        for (Eigen::Index j = 0; j < y.cols(); ++j) sq += y(i, j) * y(i, j);
        acc += std::pow(std::sqrt(sq), p);
    }
    return acc;
}

}  // namespace

TEST_CASE("DenseMatrix construction validates") {
    CHECK_NOTHROW(DenseMatrix(Eigen::MatrixXd::Ones(2, 3)));
    CHECK_THROWS_AS(DenseMatrix(Eigen::MatrixXd(0, 3)), ShapeError);
    Eigen::MatrixXd bad = Eigen::MatrixXd::Ones(2, 2);
    bad(1, 1) = std::nan("");
    CHECK_THROWS_AS(DenseMatrix{bad}, std::invalid_argument);
    bad(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(DenseMatrix{bad}, std::invalid_argument);
}

TEST_CASE("Exponent rejects values outside (0, 1]") {
    CHECK_NOTHROW(Exponent(1.0));
    CHECK_NOTHROW(Exponent(0.25));
    CHECK_THROWS_AS(Exponent(0.0), std::domain_error);
    CHECK_THROWS_AS(Exponent(1.5), std::domain_error);
    CHECK_THROWS_AS(Exponent(-0.5), std::domain_error);
}

TEST_CASE("row_l2_norms on simple matrices") {
    Eigen::MatrixXd y(3, 2);
    y << 3, 4, 0, 0, 1, 0;
    const Eigen::VectorXd norms = row_l2_norms(y);
    CHECK(norms[0] == doctest::Approx(5.0));
    CHECK(norms[1] == doctest::Approx(0.0));
    CHECK(norms[2] == doctest::Approx(1.0));

    CHECK(row_l2_norms(Eigen::MatrixXd::Zero(2, 3)).isZero());
}

TEST_CASE("row_l2_norms matches scalar-loop oracle") {
    const Eigen::MatrixXd y = random_matrix(5, 3, 11);
    const Eigen::VectorXd norms = row_l2_norms(y);
    for (Eigen::Index i = 0; i < 5; ++i) {
        double sq = 0.0;
        for (Eigen::Index j = 0; j < 3; ++j) sq += y(i, j) * y(i, j);
        CHECK(norms[i] == doctest::Approx(std::sqrt(sq)).epsilon(1e-12));
    }
}

TEST_CASE("row_l2_norms is permutation equivariant") {
    const Eigen::MatrixXd y = random_matrix(6, 4, 12);
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(6);
    perm.setIdentity();
    std::mt19937 rng(13);
    std::shuffle(perm.indices().data(), perm.indices().data() + 6, rng);
    const Eigen::VectorXd permuted = row_l2_norms(Eigen::MatrixXd(perm * y));
    const Eigen::VectorXd expected = perm * row_l2_norms(y);
    CHECK((permuted - expected).norm() == doctest::Approx(0.0));
}

TEST_CASE("l2p_power on simple matrices") {
    Eigen::MatrixXd y(2, 2);
    y << 4, 0, 0, 9;
    CHECK(l2p_power(y, Exponent(0.5)) == doctest::Approx(5.0));

    Eigen::MatrixXd y2(2, 2);
    y2 << 3, 4, 0, 0;
    CHECK(l2p_power(y2, Exponent(1.0)) == doctest::Approx(5.0));
}

TEST_CASE("l2p_power matches scalar-loop oracle") {
    const Eigen::MatrixXd y = random_matrix(6, 2, 21);
    CHECK(l2p_power(y, Exponent(0.75)) ==
          doctest::Approx(l2p_power_oracle(y, 0.75)).epsilon(1e-12));
}

TEST_CASE("l2p_power decomposes over stacked blocks and scales as |c|^p") {
    const Eigen::MatrixXd top = random_matrix(4, 3, 31);
    const Eigen::MatrixXd bottom = random_matrix(5, 3, 32);
    Eigen::MatrixXd stacked(9, 3);
    stacked << top, bottom;
    for (double p : {0.25, 0.5, 0.75, 1.0}) {
        CHECK(l2p_power(stacked, Exponent(p)) ==
              doctest::Approx(l2p_power(top, Exponent(p)) + l2p_power(bottom, Exponent(p)))
                  .epsilon(1e-12));
        const double c = -2.5;
        CHECK(l2p_power(Eigen::MatrixXd(c * top), Exponent(p)) ==
              doctest::Approx(std::pow(std::abs(c), p) * l2p_power(top, Exponent(p)))
                  .epsilon(1e-12));
    }
}

TEST_CASE("triangle inequality fails for p < 1 (witness)") {
    // Two matrices with disjoint nonzero rows.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 1);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2, 1);
    a(0, 0) = 1.0;
    b(1, 0) = 1.0;
    const Exponent p(0.5);
    const double lhs = std::pow(l2p_power(Eigen::MatrixXd(a + b), p), 1.0 / p.value());
    const double rhs = std::pow(l2p_power(a, p), 1.0 / p.value()) +
                       std::pow(l2p_power(b, p), 1.0 / p.value());
    CHECK(lhs == doctest::Approx(4.0));  // (1^0.5 + 1^0.5)^2
    CHECK(rhs == doctest::Approx(2.0));
    CHECK(lhs > rhs);
}

TEST_CASE("build_weights direct formula") {
    Eigen::MatrixXd y(2, 1);
    y << 4, 1;
    const WeightDiagonal D = build_weights(y, Exponent(0.5), 0.0, DegeneratePolicy::Strict);
    CHECK(D.entries()[0] == doctest::Approx(0.5 / (2.0 * std::pow(4.0, 1.5))));
    CHECK(D.entries()[0] == doctest::Approx(0.03125));
    CHECK(D.entries()[1] == doctest::Approx(0.25));
}

TEST_CASE("build_weights p=1 gives classical 1/(2||y_i||)") {
    const Eigen::MatrixXd y = random_matrix(5, 2, 41);
    const WeightDiagonal D = build_weights(y, Exponent(1.0), 0.0, DegeneratePolicy::Strict);
    const Eigen::VectorXd norms = row_l2_norms(y);
    for (Eigen::Index i = 0; i < 5; ++i)
        CHECK(D.entries()[i] == doctest::Approx(1.0 / (2.0 * norms[i])).epsilon(1e-12));
}

TEST_CASE("build_weights degenerate-row policies") {
    Eigen::MatrixXd y(2, 2);
    y << 1, 2, 0, 0;

    CHECK_THROWS_AS(build_weights(y, Exponent(0.5), 0.0, DegeneratePolicy::Strict),
                    DegenerateRowError);

    const WeightDiagonal smoothed =
        build_weights(y, Exponent(0.5), 1e-8, DegeneratePolicy::Smoothed);
    CHECK(smoothed.entries()[1] == doctest::Approx(0.5 / (2.0 * std::pow(1e-8, 0.75))));
    CHECK(std::isfinite(smoothed.entries()[1]));
    CHECK(smoothed.entries()[1] > 0.0);

    const WeightDiagonal pinned =
        build_weights(y, Exponent(0.5), 0.0, DegeneratePolicy::InvertZero);
    CHECK(std::isinf(pinned.entries()[1]));
    CHECK(pinned.inverse()[1] == 0.0);
    CHECK(pinned.inverse()[0] == doctest::Approx(1.0 / pinned.entries()[0]));
}

TEST_CASE("phi values and domain") {
    CHECK(phi(1.0, Exponent(0.3)) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(phi(1.0, Exponent(1.0)) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(phi(2.0, Exponent(1.0)) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(phi(0.0, Exponent(0.5)), std::domain_error);
    CHECK_THROWS_AS(phi(-1.0, Exponent(0.5)), std::domain_error);
}

TEST_CASE("phi is non-positive on (0, 100] for all p") {
    std::mt19937 rng(51);
    std::uniform_real_distribution<double> t_dist(1e-9, 100.0);
    std::uniform_real_distribution<double> p_dist(1e-6, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = t_dist(rng);
        const double p = p_dist(rng);
        CHECK(phi(t, Exponent(p)) <= 1e-14);
    }
}
