// Brute-force reference implementations the unit and acceptance suites check
// the library against. Everything here is deliberately naive and built on
// plain loops so it shares no code with the implementation under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Eigen::Index;

inline double direct_distance(const Eigen::MatrixXd& x, Index i, Index j) {
    double sum = 0.0;
    for (Index c = 0; c < x.cols(); ++c) {
        const double d = x(i, c) - x(j, c);
        sum += d * d;
    }
    return std::sqrt(sum);
}

// Greedy nearest-unvisited walk, smallest index on ties.
inline std::vector<Index> greedy_order(const Eigen::MatrixXd& x, Index start) {
    const Index p = x.rows();
    std::vector<bool> visited(static_cast<std::size_t>(p), false);
    std::vector<Index> order{start};
    visited[static_cast<std::size_t>(start)] = true;
    Index current = start;
    for (Index step = 1; step < p; ++step) {
        Index best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (Index j = 0; j < p; ++j) {
            if (visited[static_cast<std::size_t>(j)]) continue;
            const double d = direct_distance(x, current, j);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        visited[static_cast<std::size_t>(best)] = true;
        order.push_back(best);
        current = best;
    }
    return order;
}

// Least-squares residual of one segment [a, b) of seq under a constant or
// linear (in the global index) model, computed the slow way.
inline double segment_rss(const std::vector<double>& seq, int a, int b, bool linear) {
    const int m = b - a;
    double mean_x = 0.0, mean_t = 0.0;
    for (int t = a; t < b; ++t) {
        mean_x += seq[static_cast<std::size_t>(t)];
        mean_t += t;
    }
    mean_x /= m;
    mean_t /= m;
    if (!linear || m < 2) {
        double rss = 0.0;
        for (int t = a; t < b; ++t) {
            const double d = seq[static_cast<std::size_t>(t)] - mean_x;
            rss += d * d;
        }
        return rss;
    }
    double sxx = 0.0, sxy = 0.0;
    for (int t = a; t < b; ++t) {
        sxx += (t - mean_t) * (t - mean_t);
        sxy += (t - mean_t) * (seq[static_cast<std::size_t>(t)] - mean_x);
    }
    const double slope = sxy / sxx;
    double rss = 0.0;
    for (int t = a; t < b; ++t) {
        const double fit = mean_x + slope * (t - mean_t);
        const double d = seq[static_cast<std::size_t>(t)] - fit;
        rss += d * d;
    }
    return rss;
}

struct BestSegmentation {
    std::vector<int> breakpoints;
    int k = 1;
    double loss = 0.0;
    double score = 0.0;
};

// Enumerates every way to cut [0, n) into exactly k ordered pieces and keeps
// the minimal total RSS. Same tie rule as the DP: first in lexicographic
// breakpoint order wins.
inline void enumerate_cuts(int n, int k, std::vector<int>& current, int next_from,
                           const std::vector<double>& seq, bool linear, double& best,
                           std::vector<int>& best_cuts) {
    if (static_cast<int>(current.size()) == k - 1) {
        double total = 0.0;
        int a = 0;
        for (int cut : current) {
            total += segment_rss(seq, a, cut, linear);
            a = cut;
        }
        total += segment_rss(seq, a, n, linear);
        if (total < best) {
            best = total;
            best_cuts = current;
        }
        return;
    }
    const int remaining = k - 1 - static_cast<int>(current.size());
    for (int c = next_from; c <= n - remaining; ++c) {
        current.push_back(c);
        enumerate_cuts(n, k, current, c + 1, seq, linear, best, best_cuts);
        current.pop_back();
    }
}

inline double exhaustive_min_loss(const std::vector<double>& seq, int k, bool linear,
                                  std::vector<int>* cuts_out = nullptr) {
    const int n = static_cast<int>(seq.size());
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_cuts, current;
    enumerate_cuts(n, k, current, 1, seq, linear, best, best_cuts);
    if (cuts_out) *cuts_out = best_cuts;
    return best;
}

// Minimizes J = L/SST + k/n over k in [1, max_k] by full enumeration.
inline BestSegmentation exhaustive_segmentation(const std::vector<double>& seq, int max_k,
                                                bool linear) {
    const int n = static_cast<int>(seq.size());
    double mean = 0.0;
    for (double v : seq) mean += v;
    mean /= n;
    double sst = 0.0;
    for (double v : seq) sst += (v - mean) * (v - mean);

    BestSegmentation best;
    if (sst == 0.0) {
        best.score = 1.0 / n;
        return best;
    }
    best.score = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= std::min(max_k, n); ++k) {
        std::vector<int> cuts;
        const double loss = exhaustive_min_loss(seq, k, linear, &cuts);
        const double score = loss / sst + static_cast<double>(k) / n;
        if (score < best.score) {
            best.score = score;
            best.loss = loss;
            best.k = k;
            best.breakpoints = cuts;
        }
    }
    return best;
}

// Monomial count for total degree <= d over k variables, by odometer walk.
inline std::int64_t count_monomials(int k, int d) {
    std::vector<int> exps(static_cast<std::size_t>(k), 0);
    std::int64_t count = 0;
    while (true) {
        int total = 0;
        for (int e : exps) total += e;
        if (total <= d) ++count;
        int pos = k - 1;
        while (pos >= 0) {
            if (++exps[static_cast<std::size_t>(pos)] <= d) break;
            exps[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return count;
}

}  // namespace oracle
