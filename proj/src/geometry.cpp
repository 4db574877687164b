#include "pathclust/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pathclust {
namespace {

void check_start(const Matrix& points, Index start) {
    if (start < 0 || start >= points.rows())
        throw std::out_of_range("build_path: start index " + std::to_string(start) +
                                " out of range for " + std::to_string(points.rows()) + " rows");
}

// Both walkers compare exactly these values, so the materialized and
// streaming variants produce bit-identical orders.
inline double row_sqdist(const Matrix& x, Index i, Index j) {
    return (x.row(i) - x.row(j)).squaredNorm();
}

// Greedy argmin walk over squared distances supplied by `dist2`.
template <typename Dist2>
HamiltonianPath greedy_walk(Index p, Index start, Dist2&& dist2) {
    HamiltonianPath path;
    path.start = start;
    path.order.reserve(static_cast<std::size_t>(p));
    path.gaps.resize(p > 0 ? p - 1 : 0);

    std::vector<char> visited(static_cast<std::size_t>(p), 0);
    Index current = start;
    visited[static_cast<std::size_t>(current)] = 1;
    path.order.push_back(current);

    for (Index step = 0; step + 1 < p; ++step) {
        Index best = -1;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (Index j = 0; j < p; ++j) {
            if (visited[static_cast<std::size_t>(j)]) continue;
            const double d2 = dist2(current, j);
            if (d2 < best_d2) {  // strict: ties keep the smallest index
                best_d2 = d2;
                best = j;
            }
        }
        visited[static_cast<std::size_t>(best)] = 1;
        path.order.push_back(best);
        path.gaps[step] = std::sqrt(best_d2);
        current = best;
    }
    return path;
}

}  // namespace

DistanceMatrix distance_matrix(const Matrix& gram) {
    if (gram.rows() != gram.cols())
        throw std::invalid_argument("distance_matrix: gram matrix must be square");
    const Index p = gram.rows();
    DistanceMatrix dist;
    dist.d.resize(p, p);
    dist.mask.assign(static_cast<std::size_t>(p), 0);
    for (Index i = 0; i < p; ++i) {
        dist.d(i, i) = 0.0;
        for (Index j = 0; j < i; ++j) {
            const double sq = gram(i, i) - 2.0 * gram(i, j) + gram(j, j);
            const double d = std::sqrt(std::max(sq, 0.0));
            dist.d(i, j) = d;
            dist.d(j, i) = d;
        }
    }
    return dist;
}

Index select_start(const DistanceMatrix& dist) {
    const Index p = dist.size();
    if (p == 0) throw std::invalid_argument("select_start: empty distance matrix");
    Index best = 0;
    double best_sum = dist.d.row(0).sum();
    for (Index i = 1; i < p; ++i) {
        const double s = dist.d.row(i).sum();
        if (s < best_sum) {
            best_sum = s;
            best = i;
        }
    }
    return best;
}

Index select_start(const Matrix& points) {
    const Index p = points.rows();
    if (p == 0) throw std::invalid_argument("select_start: empty matrix");
    Vector sums = Vector::Zero(p);
    for (Index i = 0; i < p; ++i) {
        for (Index j = 0; j < i; ++j) {
            const double d = std::sqrt(row_sqdist(points, i, j));
            sums[i] += d;
            sums[j] += d;
        }
    }
    Index best = 0;
    for (Index i = 1; i < p; ++i)
        if (sums[i] < sums[best]) best = i;
    return best;
}

HamiltonianPath build_path(const Matrix& points, Index start) {
    check_start(points, start);
    const Index p = points.rows();
    Matrix d2(p, p);
    for (Index i = 0; i < p; ++i) {
        d2(i, i) = 0.0;
        for (Index j = 0; j < i; ++j) {
            const double v = row_sqdist(points, i, j);
            d2(i, j) = v;
            d2(j, i) = v;
        }
    }
    return greedy_walk(p, start, [&](Index i, Index j) { return d2(i, j); });
}

HamiltonianPath build_path_streaming(const Matrix& points, Index start) {
    check_start(points, start);
    return greedy_walk(points.rows(), start,
                       [&](Index i, Index j) { return row_sqdist(points, i, j); });
}

}  // namespace pathclust
