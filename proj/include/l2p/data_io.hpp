#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace l2p {

struct CsvSchema {
    /// Header name of the label column, or a 0-based column index when the
    /// file has no header (or the name parses as an integer).
    std::string label_column = "label";
    char delimiter = ',';
    bool has_header = true;
};

/// Per-feature standardization transform, reusable on held-out data.
struct Standardization {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;                // 1.0 placeholder for flagged columns
    std::vector<bool> zero_variance;       // flagged columns map to all-zeros
    bool sample_std = true;                // n-1 denominator when true
};

struct Dataset {
    Eigen::MatrixXd features;              // n samples x d features
    std::vector<int> labels;               // class ids in [0, class_count)
    int class_count = 0;
    std::vector<std::string> feature_names;
    std::vector<std::string> class_names;  // id -> original label text
    std::optional<Standardization> standardization;

    Eigen::Index sample_count() const { return features.rows(); }
    Eigen::Index feature_count() const { return features.cols(); }
};

Dataset load_csv(const std::string& path, const CsvSchema& schema = {});
void write_csv(const std::string& path, const Dataset& ds, const CsvSchema& schema = {});

/// Zero-mean, unit-std features. Zero-variance columns become all-zeros and
/// are flagged. The fitted transform is stored on the returned Dataset.
Dataset standardize(const Dataset& ds, bool sample_std = true);

/// Apply a previously fitted transform (e.g. to a held-out split).
Dataset apply_standardization(const Dataset& ds, const Standardization& st);

/// One-hot target matrix: row i has a single 1 at column labels[i].
Eigen::MatrixXd encode_targets(const Dataset& ds);

/// (A, B) in solver layout: A is d(+1)-by-n with samples as columns (all-ones
/// bias row appended when requested), B the one-hot targets.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> to_design_matrices(const Dataset& ds,
                                                               bool include_bias);

void write_standardization(const std::string& path, const Standardization& st);
Standardization load_standardization(const std::string& path);

/// Headerless numeric CSV matrix helpers. Writes go through a temp file and
/// rename, with a fixed "%.17g" format so reruns are byte-identical.
Eigen::MatrixXd load_matrix_csv(const std::string& path, char delimiter = ',');
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      char delimiter = ',');

/// Atomic text-file write (temp + rename).
void write_text_atomic(const std::string& path, const std::string& contents);

/// Shortest round-trippable decimal form of x.
std::string format_double(double x);

}  // namespace l2p
