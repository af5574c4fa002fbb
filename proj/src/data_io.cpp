#include "l2p/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "l2p/errors.hpp"

namespace l2p {

namespace {

std::vector<std::string> split_fields(const std::string& line, char delimiter,
                                      std::size_t row) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"' && cur.empty()) {
            quoted = true;
        } else if (ch == delimiter) {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    if (quoted) throw ParseError("unterminated quote", row, fields.size() + 1);
    fields.push_back(std::move(cur));
    return fields;
}

double parse_number(const std::string& field, std::size_t row, std::size_t col) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("non-numeric feature value '" + field + "'", row, col);
    if (!std::isfinite(value))
        throw ParseError("non-finite feature value '" + field + "'", row, col);
    return value;
}

std::optional<std::size_t> parse_index(const std::string& s) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
}

Dataset load_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);

    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line != "\r") lines.push_back(line);
    if (lines.empty()) throw ParseError("empty file", 1, 1);

    std::size_t first_data = 0;
    std::vector<std::string> header;
    if (schema.has_header) {
        header = split_fields(lines[0], schema.delimiter, 1);
        first_data = 1;
    }
    if (lines.size() == first_data) throw ParseError("no data rows", first_data + 1, 1);

    const std::size_t width =
        schema.has_header ? header.size()
                          : split_fields(lines[0], schema.delimiter, 1).size();

    // Resolve the label column: by header name first, then as a 0-based index.
    std::size_t label_idx = width;
    if (schema.has_header) {
        const auto it = std::find(header.begin(), header.end(), schema.label_column);
        if (it != header.end()) label_idx = static_cast<std::size_t>(it - header.begin());
    }
    if (label_idx == width) {
        if (const auto idx = parse_index(schema.label_column); idx && *idx < width)
            label_idx = *idx;
        else
            throw MissingLabelError("load_csv: label column '" + schema.label_column +
                                    "' not found in " + path);
    }

    const std::size_t d = width - 1;
    const std::size_t n = lines.size() - first_data;
    Eigen::MatrixXd features(n, d);
    std::vector<std::string> raw_labels(n);

    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t file_row = first_data + r + 1;
        const auto fields = split_fields(lines[first_data + r], schema.delimiter, file_row);
        if (fields.size() != width)
            throw InconsistentWidthError("load_csv: row " + std::to_string(file_row) +
                                         " has " + std::to_string(fields.size()) +
                                         " fields, expected " + std::to_string(width));
        std::size_t fi = 0;
        for (std::size_t c = 0; c < width; ++c) {
            if (c == label_idx) {
                raw_labels[r] = fields[c];
            } else {
                features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(fi++)) =
                    parse_number(fields[c], file_row, c + 1);
            }
        }
    }

    // Deterministic class ids: sorted unique label text.
    std::map<std::string, int> label_ids;
    for (const auto& s : raw_labels) label_ids.emplace(s, 0);
    int next_id = 0;
    for (auto& [text, id] : label_ids) id = next_id++;

    Dataset ds;
    ds.features = std::move(features);
    ds.class_count = next_id;
    ds.labels.reserve(n);
    for (const auto& s : raw_labels) ds.labels.push_back(label_ids.at(s));
    ds.class_names.resize(static_cast<std::size_t>(next_id));
    for (const auto& [text, id] : label_ids) ds.class_names[static_cast<std::size_t>(id)] = text;
    if (schema.has_header) {
        for (std::size_t c = 0; c < width; ++c)
            if (c != label_idx) ds.feature_names.push_back(header[c]);
    } else {
        for (std::size_t c = 0; c < d; ++c) ds.feature_names.push_back("f" + std::to_string(c));
    }
    return ds;
}

void write_csv(const std::string& path, const Dataset& ds, const CsvSchema& schema) {
    std::ostringstream out;
    const char delim = schema.delimiter;
    if (schema.has_header) {
        for (const auto& name : ds.feature_names) out << name << delim;
        out << schema.label_column << '\n';
    }
    for (Eigen::Index r = 0; r < ds.features.rows(); ++r) {
        for (Eigen::Index c = 0; c < ds.features.cols(); ++c)
            out << format_double(ds.features(r, c)) << delim;
        out << ds.class_names[static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(r)])]
            << '\n';
    }
    write_text_atomic(path, out.str());
}

Dataset standardize(const Dataset& ds, bool sample_std) {
    const Eigen::Index n = ds.sample_count();
    if (n < 2) throw TooFewSamplesError("standardize: need at least 2 samples");
    const Eigen::Index d = ds.feature_count();

    Standardization st;
    st.sample_std = sample_std;
    st.mean = ds.features.colwise().mean();
    st.stddev.resize(d);
    st.zero_variance.assign(static_cast<std::size_t>(d), false);
    const double denom = sample_std ? static_cast<double>(n - 1) : static_cast<double>(n);
    for (Eigen::Index c = 0; c < d; ++c) {
        const double var = (ds.features.col(c).array() - st.mean[c]).square().sum() / denom;
        const double sd = std::sqrt(var);
        if (sd > 0.0) {
            st.stddev[c] = sd;
        } else {
            st.stddev[c] = 1.0;
            st.zero_variance[static_cast<std::size_t>(c)] = true;
        }
    }
    return apply_standardization(ds, st);
}

Dataset apply_standardization(const Dataset& ds, const Standardization& st) {
    if (st.mean.size() != ds.feature_count())
        throw ShapeError("apply_standardization: transform width mismatch");
    Dataset out = ds;
    for (Eigen::Index c = 0; c < ds.feature_count(); ++c) {
        if (st.zero_variance[static_cast<std::size_t>(c)])
            out.features.col(c).setZero();
        else
            out.features.col(c) = (ds.features.col(c).array() - st.mean[c]) / st.stddev[c];
    }
    out.standardization = st;
    return out;
}

Eigen::MatrixXd encode_targets(const Dataset& ds) {
    const Eigen::Index n = ds.sample_count();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, ds.class_count);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int label = ds.labels[static_cast<std::size_t>(i)];
        if (label < 0 || label >= ds.class_count)
            throw std::out_of_range("encode_targets: label id out of range");
        B(i, label) = 1.0;
    }
    return B;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> to_design_matrices(const Dataset& ds,
                                                               bool include_bias) {
    Eigen::MatrixXd A;
    if (include_bias) {
        A.resize(ds.feature_count() + 1, ds.sample_count());
        A.topRows(ds.feature_count()) = ds.features.transpose();
        A.bottomRows(1).setOnes();
    } else {
        A = ds.features.transpose();
    }
    return {std::move(A), encode_targets(ds)};
}

void write_standardization(const std::string& path, const Standardization& st) {
    std::ostringstream out;
    out << "sample_std=" << (st.sample_std ? 1 : 0) << '\n';
    for (Eigen::Index c = 0; c < st.mean.size(); ++c) {
        out << "feature" << c << '=' << format_double(st.mean[c]) << ','
            << format_double(st.stddev[c]) << ','
            << (st.zero_variance[static_cast<std::size_t>(c)] ? 1 : 0) << '\n';
    }
    write_text_atomic(path, out.str());
}

Standardization load_standardization(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_standardization: cannot open " + path);
    Standardization st;
    std::vector<double> means, stds;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        if (key == "sample_std") {
            st.sample_std = (val == "1");
        } else {
            const auto fields = split_fields(val, ',', 0);
            if (fields.size() != 3)
                throw std::runtime_error("load_standardization: malformed line '" + line + "'");
            means.push_back(parse_number(fields[0], 0, 1));
            stds.push_back(parse_number(fields[1], 0, 2));
            st.zero_variance.push_back(fields[2] == "1");
        }
    }
    st.mean = Eigen::Map<Eigen::VectorXd>(means.data(), static_cast<Eigen::Index>(means.size()));
    st.stddev = Eigen::Map<Eigen::VectorXd>(stds.data(), static_cast<Eigen::Index>(stds.size()));
    return st;
}

Eigen::MatrixXd load_matrix_csv(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_matrix_csv: cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_fields(line, delimiter, lineno);
        std::vector<double> row;
        row.reserve(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c)
            row.push_back(parse_number(fields[c], lineno, c + 1));
        if (!rows.empty() && row.size() != rows.front().size())
            throw InconsistentWidthError("load_matrix_csv: row " + std::to_string(lineno) +
                                         " width mismatch");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty matrix file", 1, 1);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    return m;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m, char delimiter) {
    std::ostringstream out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out << delimiter;
            out << format_double(m(r, c));
        }
        out << '\n';
    }
    write_text_atomic(path, out.str());
}

void write_text_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_text_atomic: cannot open " + tmp);
        out << contents;
        if (!out) throw std::runtime_error("write_text_atomic: write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace l2p
