#pragma once

#include "pathclust/changepoint.hpp"
#include "pathclust/dataset.hpp"
#include "pathclust/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pathclust {

/// Per-sample integer cluster ids in original row order; ids are 0..k-1 and
/// every id occurs at least once.
struct ClusterLabeling {
    std::vector<int> labels;
    int k = 0;
};

// Cuts the visit sequence at the change-point positions — position c starts
// a new segment at visit index c — and maps segment ids back to original row
// order through path.order. Throws on duplicate or out-of-range positions.
ClusterLabeling labels_from_changepoints(const HamiltonianPath& path,
                                         const ChangePointSet& cps);

/// Adjusted Mutual Information between two labelings plus the intermediates
/// behind it. ami is 1 exactly iff the labelings are identical up to a
/// permutation of ids.
struct AmiReport {
    double ami = 0.0;
    double mi = 0.0;
    double expected_mi = 0.0;
    double entropy_a = 0.0;
    double entropy_b = 0.0;
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> contingency;
};

// AMI = (MI - E[MI]) / (mean(H(a), H(b)) - E[MI]) with E[MI] computed
// exactly under the hypergeometric permutation model. Natural logarithms.
AmiReport ami_score(const ClusterLabeling& a, const ClusterLabeling& b);

// Isotropic unit-variance Gaussian blobs with centers at pairwise distance
// >= separation (resampled up to a bounded number of times), near-equal
// sizes, shuffled row order, ground truth attached. Deterministic per seed.
// When centers_out is non-null it receives the clusters×dims center matrix.
DataMatrix generate_mgd(Index p, Index dims, int clusters, double separation,
                        std::uint64_t seed, Matrix* centers_out = nullptr);

/// 2-D benchmark shapes with standard recipes.
enum class ShapeKind { NoisyCircles, NoisyMoons, Blobs, Aniso, Varied };

ShapeKind shape_from_name(const std::string& name);
DataMatrix generate_shape(ShapeKind kind, Index n, std::uint64_t seed);

struct KMeansResult {
    ClusterLabeling labeling;
    Matrix centroids;      // k×dims
    double inertia = 0.0;  // sum of squared distances to assigned centroids
    int iterations = 0;
};

// Lloyd's algorithm with k-means++ initialization, best of `restarts` runs
// by inertia; per-restart seeds derive from the master seed.
KMeansResult kmeans_fit(const Matrix& points, int k, std::uint64_t seed, int restarts = 10);

ClusterLabeling kmeans_baseline(const DataMatrix& data, int k, std::uint64_t seed,
                                int restarts = 10);

}  // namespace pathclust
