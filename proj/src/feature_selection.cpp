#include "l2p/feature_selection.hpp"

#include <algorithm>

#include "l2p/norms.hpp"

namespace l2p {

FeatureRanking rank_features(const DenseMatrix& X, std::optional<Eigen::Index> bias_row) {
    if (bias_row && (*bias_row < 0 || *bias_row >= X.rows()))
        throw std::out_of_range("rank_features: bias_row out of range");
    const Eigen::VectorXd norms = row_l2_norms(X);
    FeatureRanking ranking;
    ranking.entries.reserve(static_cast<std::size_t>(X.rows()));
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        if (bias_row && i == *bias_row) continue;
        ranking.entries.push_back({i, norms[i]});
    }
    std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                     [](const RankedFeature& a, const RankedFeature& b) {
                         if (a.score != b.score) return a.score > b.score;
                         return a.index < b.index;
                     });
    return ranking;
}

std::vector<Eigen::Index> select_top_k(const FeatureRanking& ranking, std::size_t k) {
    if (k < 1 || k > ranking.entries.size())
        throw std::out_of_range("select_top_k: k must lie in [1, " +
                                std::to_string(ranking.entries.size()) + "]");
    std::vector<Eigen::Index> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(ranking.entries[i].index);
    return out;
}

double support_recovery_rate(const std::vector<Eigen::Index>& selected,
                             const std::set<Eigen::Index>& true_support) {
    if (true_support.empty())
        throw std::invalid_argument("support_recovery_rate: empty true support");
    std::size_t hits = 0;
    for (Eigen::Index i : selected)
        if (true_support.count(i)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(true_support.size());
}

}  // namespace l2p
