#include "pathclust/evaluation.hpp"

#include "pathclust/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pathclust {

ClusterLabeling labels_from_changepoints(const HamiltonianPath& path, const ChangePointSet& cps) {
    const Index p = path.size();
    if (p == 0) throw std::invalid_argument("labels_from_changepoints: empty path");

    // Validate: strictly increasing visit-split positions in [1, p-1].
    int prev = 0;
    for (int pos : cps.positions) {
        if (pos <= prev)
            throw std::invalid_argument("labels_from_changepoints: positions must be strictly "
                                        "increasing without duplicates");
        if (pos < 1 || pos >= static_cast<int>(p))
            throw std::invalid_argument("labels_from_changepoints: position " +
                                        std::to_string(pos) + " out of range [1, " +
                                        std::to_string(p - 1) + "]");
        prev = pos;
    }

    ClusterLabeling out;
    out.k = static_cast<int>(cps.positions.size()) + 1;
    out.labels.assign(static_cast<std::size_t>(p), 0);
    int segment = 0;
    std::size_t next_cut = 0;
    for (Index t = 0; t < p; ++t) {
        if (next_cut < cps.positions.size() &&
            static_cast<int>(t) == cps.positions[next_cut]) {
            ++segment;
            ++next_cut;
        }
        out.labels[static_cast<std::size_t>(path.order[static_cast<std::size_t>(t)])] = segment;
    }
    return out;
}

namespace {

// Exact E[MI] under the hypergeometric permutation model: for every cell the
// sum over all feasible counts nij of its MI contribution weighted by the
// hypergeometric probability, factorials via lgamma.
double expected_mutual_information(const std::vector<std::int64_t>& a_sizes,
                                   const std::vector<std::int64_t>& b_sizes, std::int64_t n) {
    const double log_n = std::log(static_cast<double>(n));
    const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
    double emi = 0.0;
    for (std::int64_t ai : a_sizes) {
        if (ai == 0) continue;
        for (std::int64_t bj : b_sizes) {
            if (bj == 0) continue;
            const std::int64_t lo = std::max<std::int64_t>(1, ai + bj - n);
            const std::int64_t hi = std::min(ai, bj);
            for (std::int64_t nij = lo; nij <= hi; ++nij) {
                const double log_term =
                    std::lgamma(static_cast<double>(ai) + 1.0) +
                    std::lgamma(static_cast<double>(bj) + 1.0) +
                    std::lgamma(static_cast<double>(n - ai) + 1.0) +
                    std::lgamma(static_cast<double>(n - bj) + 1.0) - lg_n1 -
                    std::lgamma(static_cast<double>(nij) + 1.0) -
                    std::lgamma(static_cast<double>(ai - nij) + 1.0) -
                    std::lgamma(static_cast<double>(bj - nij) + 1.0) -
                    std::lgamma(static_cast<double>(n - ai - bj + nij) + 1.0);
                const double mi_part =
                    (static_cast<double>(nij) / static_cast<double>(n)) *
                    (log_n + std::log(static_cast<double>(nij)) -
                     std::log(static_cast<double>(ai)) - std::log(static_cast<double>(bj)));
                emi += mi_part * std::exp(log_term);
            }
        }
    }
    return emi;
}

double entropy(const std::vector<std::int64_t>& sizes, std::int64_t n) {
    double h = 0.0;
    for (std::int64_t s : sizes) {
        if (s == 0) continue;
        const double q = static_cast<double>(s) / static_cast<double>(n);
        h -= q * std::log(q);
    }
    return h;
}

}  // namespace

AmiReport ami_score(const ClusterLabeling& a, const ClusterLabeling& b) {
    if (a.labels.size() != b.labels.size())
        throw std::invalid_argument("ami_score: labelings have different lengths");
    if (a.labels.empty()) throw std::invalid_argument("ami_score: empty labelings");
    const std::int64_t n = static_cast<std::int64_t>(a.labels.size());

    const int ka = std::max(a.k, 1 + *std::max_element(a.labels.begin(), a.labels.end()));
    const int kb = std::max(b.k, 1 + *std::max_element(b.labels.begin(), b.labels.end()));

    AmiReport rep;
    rep.contingency.setZero(ka, kb);
    for (std::size_t i = 0; i < a.labels.size(); ++i) {
        if (a.labels[i] < 0 || b.labels[i] < 0)
            throw std::invalid_argument("ami_score: negative label id");
        rep.contingency(a.labels[i], b.labels[i]) += 1;
    }
    std::vector<std::int64_t> a_sizes(static_cast<std::size_t>(ka), 0);
    std::vector<std::int64_t> b_sizes(static_cast<std::size_t>(kb), 0);
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < kb; ++j) {
            a_sizes[static_cast<std::size_t>(i)] += rep.contingency(i, j);
            b_sizes[static_cast<std::size_t>(j)] += rep.contingency(i, j);
        }

    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < kb; ++j) {
            const std::int64_t c = rep.contingency(i, j);
            if (c == 0) continue;
            rep.mi += (static_cast<double>(c) / static_cast<double>(n)) *
                      std::log(static_cast<double>(n) * static_cast<double>(c) /
                               (static_cast<double>(a_sizes[static_cast<std::size_t>(i)]) *
                                static_cast<double>(b_sizes[static_cast<std::size_t>(j)])));
        }
    rep.entropy_a = entropy(a_sizes, n);
    rep.entropy_b = entropy(b_sizes, n);

    // Identical up to permutation (every row and column carries exactly one
    // nonzero cell) is exactly 1 by definition; this also covers the
    // both-constant case.
    bool permutation = true;
    for (int i = 0; i < ka && permutation; ++i) {
        int nz = 0;
        for (int j = 0; j < kb; ++j) nz += rep.contingency(i, j) != 0;
        if (nz != 1 && a_sizes[static_cast<std::size_t>(i)] != 0) permutation = false;
    }
    for (int j = 0; j < kb && permutation; ++j) {
        int nz = 0;
        for (int i = 0; i < ka; ++i) nz += rep.contingency(i, j) != 0;
        if (nz != 1 && b_sizes[static_cast<std::size_t>(j)] != 0) permutation = false;
    }
    if (permutation) {
        rep.expected_mi = expected_mutual_information(a_sizes, b_sizes, n);
        rep.ami = 1.0;
        return rep;
    }

    rep.expected_mi = expected_mutual_information(a_sizes, b_sizes, n);
    constexpr double kEps = 2.220446049250313e-16;
    double denom = 0.5 * (rep.entropy_a + rep.entropy_b) - rep.expected_mi;
    denom = denom < 0.0 ? std::min(denom, -kEps) : std::max(denom, kEps);
    rep.ami = (rep.mi - rep.expected_mi) / denom;
    return rep;
}

DataMatrix generate_mgd(Index p, Index dims, int clusters, double separation,
                        std::uint64_t seed, Matrix* centers_out) {
    if (clusters < 2) throw std::invalid_argument("generate_mgd: clusters must be >= 2");
    if (p < clusters) throw std::invalid_argument("generate_mgd: p must be >= clusters");
    if (dims < 1 || separation <= 0.0)
        throw std::invalid_argument("generate_mgd: bad dims or separation");

    Rng rng(seed);

    // Center scale chosen so typical pairwise distances land comfortably
    // above the floor and the clusters stay isolated; violations of the
    // floor are resampled.
    const double scale = 1.8 * separation / std::sqrt(2.0 * static_cast<double>(dims));
    Matrix centers(clusters, dims);
    bool placed = false;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
        for (int c = 0; c < clusters; ++c)
            for (Index j = 0; j < dims; ++j) centers(c, j) = scale * rng.normal();
        placed = true;
        for (int c = 0; c < clusters && placed; ++c)
            for (int d = c + 1; d < clusters; ++d)
                if ((centers.row(c) - centers.row(d)).norm() < separation) {
                    placed = false;
                    break;
                }
    }
    if (!placed)
        throw std::runtime_error("generate_mgd: could not place centers at the requested "
                                 "separation after 100 attempts");
    if (centers_out) *centers_out = centers;

    std::vector<int> truth;
    truth.reserve(static_cast<std::size_t>(p));
    const Index base = p / clusters;
    const Index extra = p % clusters;
    for (int c = 0; c < clusters; ++c) {
        const Index size = base + (c < extra ? 1 : 0);
        for (Index i = 0; i < size; ++i) truth.push_back(c);
    }

    Matrix values(p, dims);
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < dims; ++j)
            values(i, j) = centers(truth[static_cast<std::size_t>(i)], j) + rng.normal();

    // Shuffle rows so class blocks are not contiguous in the file.
    std::vector<Index> perm(static_cast<std::size_t>(p));
    std::iota(perm.begin(), perm.end(), Index{0});
    rng.shuffle(perm);

    DataMatrix out;
    out.values.resize(p, dims);
    std::vector<int> shuffled_truth(static_cast<std::size_t>(p));
    for (Index i = 0; i < p; ++i) {
        out.values.row(i) = values.row(perm[static_cast<std::size_t>(i)]);
        shuffled_truth[static_cast<std::size_t>(i)] =
            truth[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    }
    out.ground_truth = std::move(shuffled_truth);
    return out;
}

ShapeKind shape_from_name(const std::string& name) {
    if (name == "circles" || name == "noisy_circles") return ShapeKind::NoisyCircles;
    if (name == "moons" || name == "noisy_moons") return ShapeKind::NoisyMoons;
    if (name == "blobs") return ShapeKind::Blobs;
    if (name == "aniso") return ShapeKind::Aniso;
    if (name == "varied") return ShapeKind::Varied;
    throw std::invalid_argument("unknown shape '" + name + "'");
}

namespace {

DataMatrix blobs_with_std(Index n, int k, const std::vector<double>& stds, std::uint64_t seed) {
    Rng rng(seed);
    Matrix centers(k, 2);
    for (int c = 0; c < k; ++c) {
        centers(c, 0) = rng.uniform(-10.0, 10.0);
        centers(c, 1) = rng.uniform(-10.0, 10.0);
    }
    DataMatrix out;
    out.values.resize(n, 2);
    std::vector<int> truth(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        const int c = static_cast<int>(i) % k;
        truth[static_cast<std::size_t>(i)] = c;
        out.values(i, 0) = centers(c, 0) + stds[static_cast<std::size_t>(c)] * rng.normal();
        out.values(i, 1) = centers(c, 1) + stds[static_cast<std::size_t>(c)] * rng.normal();
    }
    out.ground_truth = std::move(truth);
    return out;
}

}  // namespace

DataMatrix generate_shape(ShapeKind kind, Index n, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("generate_shape: n too small");
    constexpr double kPi = 3.14159265358979323846;
    Rng rng(seed);
    DataMatrix out;

    switch (kind) {
        case ShapeKind::NoisyCircles: {
            const Index n_out = n / 2, n_in = n - n_out;
            out.values.resize(n, 2);
            std::vector<int> truth(static_cast<std::size_t>(n));
            for (Index i = 0; i < n_out; ++i) {
                const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_out);
                out.values(i, 0) = std::cos(t) + 0.05 * rng.normal();
                out.values(i, 1) = std::sin(t) + 0.05 * rng.normal();
                truth[static_cast<std::size_t>(i)] = 0;
            }
            for (Index i = 0; i < n_in; ++i) {
                const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_in);
                out.values(n_out + i, 0) = 0.5 * std::cos(t) + 0.05 * rng.normal();
                out.values(n_out + i, 1) = 0.5 * std::sin(t) + 0.05 * rng.normal();
                truth[static_cast<std::size_t>(n_out + i)] = 1;
            }
            out.ground_truth = std::move(truth);
            break;
        }
        case ShapeKind::NoisyMoons: {
            const Index n_out = n / 2, n_in = n - n_out;
            out.values.resize(n, 2);
            std::vector<int> truth(static_cast<std::size_t>(n));
            for (Index i = 0; i < n_out; ++i) {
                const double t = kPi * static_cast<double>(i) / static_cast<double>(n_out - 1);
                out.values(i, 0) = std::cos(t) + 0.05 * rng.normal();
                out.values(i, 1) = std::sin(t) + 0.05 * rng.normal();
                truth[static_cast<std::size_t>(i)] = 0;
            }
            for (Index i = 0; i < n_in; ++i) {
                const double t = kPi * static_cast<double>(i) / static_cast<double>(n_in - 1);
                out.values(n_out + i, 0) = 1.0 - std::cos(t) + 0.05 * rng.normal();
                out.values(n_out + i, 1) = 0.5 - std::sin(t) + 0.05 * rng.normal();
                truth[static_cast<std::size_t>(n_out + i)] = 1;
            }
            out.ground_truth = std::move(truth);
            break;
        }
        case ShapeKind::Blobs:
            return blobs_with_std(n, 3, {1.0, 1.0, 1.0}, seed);
        case ShapeKind::Varied:
            return blobs_with_std(n, 3, {1.0, 2.5, 0.5}, seed);
        case ShapeKind::Aniso: {
            out = blobs_with_std(n, 3, {1.0, 1.0, 1.0}, seed);
            Eigen::Matrix2d t;
            t << 0.6, -0.6, -0.4, 0.8;
            out.values = out.values * t;
            break;
        }
    }
    return out;
}

ClusterLabeling kmeans_baseline(const DataMatrix& data, int k, std::uint64_t seed, int restarts) {
    return kmeans_fit(data.values, k, seed, restarts).labeling;
}

}  // namespace pathclust
