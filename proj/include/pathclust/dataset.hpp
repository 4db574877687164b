#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pathclust {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// A numeric table of p samples by k attributes, one sample per row,
/// with optional integer class labels stripped from a label column.
struct DataMatrix {
    Matrix values;
    std::optional<std::vector<int>> ground_truth;
    std::vector<std::string> column_names;  // empty when the source had no header

    Index rows() const { return values.rows(); }
    Index cols() const { return values.cols(); }
};

/// Selects a column either by zero-based index or by header name.
using ColumnRef = std::variant<int, std::string>;

struct LoadOptions {
    bool has_header = true;
    std::optional<ColumnRef> label_column;
};

// RFC-4180 CSV reader. Every non-label cell must parse as a finite real
// number; label cells may be arbitrary strings and are mapped to integer ids
// in order of first appearance. Throws std::runtime_error naming the
// offending row/column on parse failures, ragged rows, or an empty file.
DataMatrix load_csv(const std::string& path, const LoadOptions& opts = {});

// Writes the same CSV dialect load_csv reads. Values are printed with
// shortest round-trip formatting, so load -> write -> load is exact.
// When labels is non-null it is appended as a final column.
void write_csv(const DataMatrix& data, const std::string& path,
               const std::vector<int>* labels = nullptr,
               const std::string& label_header = "cluster");

// Column-wise z-score with population (divide-by-p) standard deviation.
// Zero-variance columns become all zeros.
DataMatrix standardize(const DataMatrix& data);
Matrix standardize(const Matrix& values);

// Number of monomials of total degree <= degree in k variables: C(k+d, d).
// Throws when the count exceeds max_cols.
Index lifted_dimension(Index k, int degree, Index max_cols);

// Explicit polynomial feature map: every monomial of total degree <= degree,
// constant term included, columns in graded lexicographic order, e.g.
// k=2, degree=2 -> (1, a, b, a^2, ab, b^2). Euclidean distances in the
// lifted space then play the role of a polynomial kernel.
DataMatrix polynomial_lift(const DataMatrix& data, int degree, Index max_cols = 10000);

}  // namespace pathclust
