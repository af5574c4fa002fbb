#pragma once

#include <stdexcept>
#include <string>

namespace l2p {

/// A matrix row became (numerically) zero where a positive weight is required.
struct DegenerateRowError : std::runtime_error {
    explicit DegenerateRowError(const std::string& what) : std::runtime_error(what) {}
};

/// The reduced system M D^{-1} M^T is not positive definite; M is rank deficient.
struct SingularSystemError : std::runtime_error {
    explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t row, std::size_t col)
        : std::runtime_error(what + " (row " + std::to_string(row) + ", column " +
                             std::to_string(col) + ")"),
          row(row), col(col) {}
    std::size_t row;
    std::size_t col;
};

struct InconsistentWidthError : std::runtime_error {
    explicit InconsistentWidthError(const std::string& what) : std::runtime_error(what) {}
};

struct MissingLabelError : std::runtime_error {
    explicit MissingLabelError(const std::string& what) : std::runtime_error(what) {}
};

struct TooFewSamplesError : std::runtime_error {
    explicit TooFewSamplesError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace l2p
