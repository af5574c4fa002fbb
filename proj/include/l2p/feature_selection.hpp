#pragma once

#include <optional>
#include <set>
#include <vector>

#include "l2p/dense_matrix.hpp"

namespace l2p {

struct RankedFeature {
    Eigen::Index index = 0;
    double score = 0.0;  // ||x_i||_2
};

/// Features ordered by descending row norm of X; ties broken by ascending index.
struct FeatureRanking {
    std::vector<RankedFeature> entries;
};

/// Rank all rows of X by Euclidean row norm. If bias_row is given, that row
/// is excluded from the ranking.
FeatureRanking rank_features(const DenseMatrix& X,
                             std::optional<Eigen::Index> bias_row = std::nullopt);

/// First k indices of the ranking.
std::vector<Eigen::Index> select_top_k(const FeatureRanking& ranking, std::size_t k);

/// |selected intersect true_support| / |true_support|.
double support_recovery_rate(const std::vector<Eigen::Index>& selected,
                             const std::set<Eigen::Index>& true_support);

}  // namespace l2p
