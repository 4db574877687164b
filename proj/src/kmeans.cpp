#include "pathclust/evaluation.hpp"
#include "pathclust/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pathclust {
namespace {

struct SingleRun {
    std::vector<int> assign;
    Matrix centroids;
    double inertia = 0.0;
    int iterations = 0;
};

double nearest_centroid(const Matrix& x, Index i, const Matrix& centroids, int k, int& arg) {
    double best = std::numeric_limits<double>::infinity();
    arg = 0;
    for (int c = 0; c < k; ++c) {
        const double d = (x.row(i) - centroids.row(c)).squaredNorm();
        if (d < best) {
            best = d;
            arg = c;
        }
    }
    return best;
}

Matrix kmeanspp_init(const Matrix& x, int k, Rng& rng) {
    const Index p = x.rows();
    Matrix centroids(k, x.cols());
    std::vector<char> chosen(static_cast<std::size_t>(p), 0);

    Index first = rng.uniform_int(0, p - 1);
    centroids.row(0) = x.row(first);
    chosen[static_cast<std::size_t>(first)] = 1;

    Vector d2(p);
    for (Index i = 0; i < p; ++i) d2[i] = (x.row(i) - centroids.row(0)).squaredNorm();

    for (int c = 1; c < k; ++c) {
        const double total = d2.sum();
        Index pick = -1;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double cum = 0.0;
            for (Index i = 0; i < p; ++i) {
                cum += d2[i];
                if (cum >= target && d2[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
        }
        if (pick < 0) {  // all remaining mass zero: duplicates; take first unchosen
            for (Index i = 0; i < p; ++i)
                if (!chosen[static_cast<std::size_t>(i)]) {
                    pick = i;
                    break;
                }
        }
        centroids.row(c) = x.row(pick);
        chosen[static_cast<std::size_t>(pick)] = 1;
        for (Index i = 0; i < p; ++i)
            d2[i] = std::min(d2[i], (x.row(i) - centroids.row(c)).squaredNorm());
    }
    return centroids;
}

SingleRun lloyd(const Matrix& x, int k, Rng& rng, int max_iter = 300) {
    const Index p = x.rows();
    SingleRun run;
    run.centroids = kmeanspp_init(x, k, rng);
    run.assign.assign(static_cast<std::size_t>(p), -1);

    double prev_inertia = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        double inertia = 0.0;
        for (Index i = 0; i < p; ++i) {
            int arg;
            inertia += nearest_centroid(x, i, run.centroids, k, arg);
            if (arg != run.assign[static_cast<std::size_t>(i)]) {
                run.assign[static_cast<std::size_t>(i)] = arg;
                changed = true;
            }
        }
        // Lloyd monotonicity; a violation means the update step is broken.
        if (inertia > prev_inertia * (1.0 + 1e-9) + 1e-12)
            throw std::logic_error("kmeans: inertia increased across an iteration");
        prev_inertia = inertia;
        run.inertia = inertia;
        run.iterations = iter + 1;
        if (!changed && iter > 0) break;

        Matrix sums = Matrix::Zero(k, x.cols());
        std::vector<Index> counts(static_cast<std::size_t>(k), 0);
        for (Index i = 0; i < p; ++i) {
            sums.row(run.assign[static_cast<std::size_t>(i)]) += x.row(i);
            ++counts[static_cast<std::size_t>(run.assign[static_cast<std::size_t>(i)])];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                run.centroids.row(c) =
                    sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
            } else {
                // re-seed an empty cluster at the point farthest from its centroid
                Index far = 0;
                double far_d = -1.0;
                for (Index i = 0; i < p; ++i) {
                    const double d =
                        (x.row(i) -
                         run.centroids.row(run.assign[static_cast<std::size_t>(i)]))
                            .squaredNorm();
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                run.centroids.row(c) = x.row(far);
                prev_inertia = std::numeric_limits<double>::infinity();
            }
        }
    }
    return run;
}

}  // namespace

KMeansResult kmeans_fit(const Matrix& x, int k, std::uint64_t seed, int restarts) {
    const Index p = x.rows();
    if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
    if (k > p) throw std::invalid_argument("kmeans: k exceeds the number of points");
    if (restarts < 1) throw std::invalid_argument("kmeans: restarts must be >= 1");

    SingleRun best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        Rng rng(seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(r + 1)));
        SingleRun run = lloyd(x, k, rng);
        if (run.inertia < best.inertia) best = std::move(run);
    }

    // Compact ids so every id in 0..k'-1 is used (duplicate-heavy inputs can
    // strand a centroid).
    std::vector<int> remap(static_cast<std::size_t>(k), -1);
    int next = 0;
    KMeansResult out;
    out.labeling.labels.resize(best.assign.size());
    for (std::size_t i = 0; i < best.assign.size(); ++i) {
        int& id = remap[static_cast<std::size_t>(best.assign[i])];
        if (id < 0) id = next++;
        out.labeling.labels[i] = id;
    }
    out.labeling.k = next;
    out.centroids.resize(next, x.cols());
    for (int c = 0; c < k; ++c)
        if (remap[static_cast<std::size_t>(c)] >= 0)
            out.centroids.row(remap[static_cast<std::size_t>(c)]) = best.centroids.row(c);
    out.inertia = best.inertia;
    out.iterations = best.iterations;
    return out;
}

}  // namespace pathclust
