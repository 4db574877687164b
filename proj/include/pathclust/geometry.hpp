#pragma once

#include "pathclust/dataset.hpp"

#include <Eigen/Dense>

#include <vector>

namespace pathclust {

/// Pairwise Euclidean distances, symmetric with a zero diagonal. The mask is
/// scratch state for visited-column exclusion during path construction.
struct DistanceMatrix {
    Matrix d;
    std::vector<char> mask;  // mask[j] != 0 excludes column j from argmin scans

    Index size() const { return d.rows(); }
};

// G = X X^T. The lower triangle is mirrored so the result is exactly
// symmetric despite gemm round-off.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
gram_matrix(const Eigen::MatrixBase<Derived>& x) {
    using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Mat g = x * x.transpose();
    for (Index i = 0; i < g.rows(); ++i)
        for (Index j = 0; j < i; ++j) g(j, i) = g(i, j);
    return g;
}

// D_ij = sqrt(g_ii - 2 g_ij + g_jj), the diag(G)·1^T - 2G + 1·diag(G)^T
// identity. Negative round-off is clamped to zero before the root.
DistanceMatrix distance_matrix(const Matrix& gram);

// Row with the smallest row sum of D (the center of the densest area);
// ties break to the smallest index.
Index select_start(const DistanceMatrix& dist);

// Same selection rule from coordinates directly, O(p) memory.
Index select_start(const Matrix& points);

/// Greedy nearest-unvisited-neighbor walk: the visit order (a permutation of
/// row indices) and the p-1 Euclidean gaps between consecutive visits.
struct HamiltonianPath {
    Index start = 0;
    std::vector<Index> order;
    Vector gaps;

    Index size() const { return static_cast<Index>(order.size()); }
};

// Walks from `start`, each step moving to the unvisited row at minimal
// Euclidean distance from the current row; distance ties break to the
// smallest candidate index. Duplicate rows are visited immediately as
// zero-length gaps. Materializes the squared-distance matrix (O(p^2) space).
HamiltonianPath build_path(const Matrix& points, Index start);

// Identical output to build_path, computing distances on the fly per step
// instead of storing them (O(1) extra space beyond the result).
HamiltonianPath build_path_streaming(const Matrix& points, Index start);

inline HamiltonianPath build_path(const DataMatrix& data, Index start) {
    return build_path(data.values, start);
}
inline HamiltonianPath build_path_streaming(const DataMatrix& data, Index start) {
    return build_path_streaming(data.values, start);
}

}  // namespace pathclust
