#include "pathclust/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pathclust {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_sequence(const Sequence& seq, const char* who) {
    if (seq.size() < 2)
        throw std::invalid_argument(std::string(who) + ": sequence needs at least 2 values");
    if (!seq.allFinite())
        throw std::invalid_argument(std::string(who) + ": sequence contains NaN or Inf");
}

// Least-squares cost of fitting one segment [a, b) under either model,
// O(1) per query from prefix sums. Linear fits use the global index as the
// regressor; its centered second moment over consecutive integers is
// m(m^2-1)/12 exactly, so the design determinant is never lost to round-off.
class SegmentCost {
public:
    SegmentCost(const Sequence& seq, SegmentModel model) : model_(model) {
        const Index n = seq.size();
        sum_x_.resize(n + 1);
        sum_x2_.resize(n + 1);
        sum_tx_.resize(n + 1);
        sum_x_[0] = sum_x2_[0] = sum_tx_[0] = 0.0;
        for (Index i = 0; i < n; ++i) {
            const double x = seq[i];
            sum_x_[i + 1] = sum_x_[i] + x;
            sum_x2_[i + 1] = sum_x2_[i] + x * x;
            sum_tx_[i + 1] = sum_tx_[i] + static_cast<double>(i) * x;
        }
    }

    double cost(int a, int b) const {
        const double m = b - a;
        const double sx = sum_x_[b] - sum_x_[a];
        const double syy = sum_x2_[b] - sum_x2_[a] - sx * sx / m;
        if (model_ == SegmentModel::Constant || b - a < 2) return std::max(syy, 0.0);
        const double sxx = m * (m * m - 1.0) / 12.0;
        const double tbar = 0.5 * (a + b - 1);
        const double sxy = sum_tx_[b] - sum_tx_[a] - tbar * sx;
        return std::max(syy - sxy * sxy / sxx, 0.0);
    }

    // (intercept, slope) against the global index
    Eigen::Vector2d fit(int a, int b) const {
        const double m = b - a;
        const double sx = sum_x_[b] - sum_x_[a];
        const double mean = sx / m;
        if (model_ == SegmentModel::Constant || b - a < 2) return {mean, 0.0};
        const double sxx = m * (m * m - 1.0) / 12.0;
        const double tbar = 0.5 * (a + b - 1);
        const double sxy = sum_tx_[b] - sum_tx_[a] - tbar * sx;
        const double slope = sxy / sxx;
        return {mean - slope * tbar, slope};
    }

private:
    SegmentModel model_;
    std::vector<double> sum_x_, sum_x2_, sum_tx_;
};

struct Partition {
    std::vector<int> breakpoints;
    double cost = 0.0;
};

// Exact DP over (segment count, prefix length). best[j][i] = minimal cost of
// splitting [0, i) into j segments; ties keep the earliest split.
std::vector<Partition> optimal_partitions(const Sequence& seq, int max_k, const SegmentCost& sc) {
    const int n = static_cast<int>(seq.size());
    const int kmax = std::min(max_k, n);

    std::vector<std::vector<double>> best(kmax + 1, std::vector<double>(n + 1, kInf));
    std::vector<std::vector<int>> split(kmax + 1, std::vector<int>(n + 1, 0));
    for (int i = 1; i <= n; ++i) best[1][i] = sc.cost(0, i);
    for (int j = 2; j <= kmax; ++j) {
        for (int i = j; i <= n; ++i) {
            double b = kInf;
            int arg = j - 1;
            for (int s = j - 1; s < i; ++s) {
                const double v = best[j - 1][s] + sc.cost(s, i);
                if (v < b) {
                    b = v;
                    arg = s;
                }
            }
            best[j][i] = b;
            split[j][i] = arg;
        }
    }

    std::vector<Partition> out(kmax + 1);
    for (int j = 1; j <= kmax; ++j) {
        out[j].cost = best[j][n];
        int i = n;
        for (int jj = j; jj >= 2; --jj) {
            const int s = split[jj][i];
            out[j].breakpoints.push_back(s);
            i = s;
        }
        std::reverse(out[j].breakpoints.begin(), out[j].breakpoints.end());
    }
    return out;
}

std::vector<Eigen::Vector2d> segment_fits(const std::vector<int>& breakpoints, int n,
                                          const SegmentCost& sc) {
    std::vector<Eigen::Vector2d> fits;
    int a = 0;
    for (std::size_t i = 0; i <= breakpoints.size(); ++i) {
        const int b = i < breakpoints.size() ? breakpoints[i] : n;
        fits.push_back(sc.fit(a, b));
        a = b;
    }
    return fits;
}

// SS increase if break i were merged away (its two adjacent segments
// joined, everything else fixed).
std::vector<double> merge_costs(const std::vector<int>& breakpoints, int n,
                                const SegmentCost& sc) {
    std::vector<double> scores;
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        const int a = i == 0 ? 0 : breakpoints[i - 1];
        const int m = breakpoints[i];
        const int b = i + 1 < breakpoints.size() ? breakpoints[i + 1] : n;
        scores.push_back(sc.cost(a, b) - sc.cost(a, m) - sc.cost(m, b));
    }
    return scores;
}

}  // namespace

std::string detector_name(Detector d) {
    switch (d) {
        case Detector::CusumA: return "cusum-a";
        case Detector::CusumB: return "cusum-b";
        case Detector::Jenks: return "jenks";
        case Detector::Bcd: return "bcd";
        case Detector::Optimal: return "optimal";
    }
    return "?";
}

Detector detector_from_name(const std::string& name) {
    if (name == "cusum-a") return Detector::CusumA;
    if (name == "cusum-b") return Detector::CusumB;
    if (name == "jenks") return Detector::Jenks;
    if (name == "bcd") return Detector::Bcd;
    if (name == "optimal") return Detector::Optimal;
    throw std::invalid_argument("unknown detector '" + name + "'");
}

Segmentation segment_optimal(const Sequence& seq, int max_k, SegmentModel model) {
    validate_sequence(seq, "segment_optimal");
    if (max_k < 1) throw std::invalid_argument("segment_optimal: max_k must be >= 1");
    const int n = static_cast<int>(seq.size());
    if (max_k > n) throw std::invalid_argument("segment_optimal: max_k exceeds sequence length");

    const double mean = seq.mean();
    const double sst = (seq.array() - mean).square().sum();
    SegmentCost sc(seq, model);

    Segmentation out;
    out.model = model;
    if (sst == 0.0) {
        out.k = 1;
        out.loss = 0.0;
        out.score = 1.0 / n;
        out.params = segment_fits({}, n, sc);
        return out;
    }

    const auto parts = optimal_partitions(seq, max_k, sc);
    int best_k = 1;
    double best_j = kInf;
    for (int j = 1; j < static_cast<int>(parts.size()); ++j) {
        const double penalized = parts[j].cost / sst + static_cast<double>(j) / n;
        if (penalized < best_j) {
            best_j = penalized;
            best_k = j;
        }
    }
    out.k = best_k;
    out.breakpoints = parts[best_k].breakpoints;
    out.loss = parts[best_k].cost;
    out.score = best_j;
    out.params = segment_fits(out.breakpoints, n, sc);
    return out;
}

ChangePointSet jenks_breaks(const Sequence& seq, int k) {
    validate_sequence(seq, "jenks_breaks");
    const int n = static_cast<int>(seq.size());
    if (k < 1 || k > n)
        throw std::invalid_argument("jenks_breaks: k must be in [1, N]");

    ChangePointSet out;
    out.kind = Detector::Jenks;
    if (k == 1) return out;

    SegmentCost sc(seq, SegmentModel::Constant);
    const auto parts = optimal_partitions(seq, k, sc);
    out.positions = parts[k].breakpoints;
    out.scores = merge_costs(out.positions, n, sc);
    return out;
}

ChangePointSet to_changepoints(const Segmentation& seg, const Sequence& seq) {
    SegmentCost sc(seq, seg.model);
    ChangePointSet out;
    out.kind = Detector::Optimal;
    out.positions = seg.breakpoints;
    out.scores = merge_costs(seg.breakpoints, static_cast<int>(seq.size()), sc);
    return out;
}

namespace {

// Shared two-sided recursion. After an alarm both statistics clear and the
// reference mean restarts from the next sample, so one level shift yields
// one alarm instead of re-alarming on every subsequent sample.
ChangePointSet cusum_core(const Sequence& v, double threshold, double allowance,
                          Detector kind, int position_offset) {
    if (threshold <= 0.0) throw std::invalid_argument("cusum: threshold must be > 0");
    if (allowance < 0.0) throw std::invalid_argument("cusum: allowance must be >= 0");

    ChangePointSet out;
    out.kind = kind;
    double s_up = 0.0, s_dn = 0.0, sum = 0.0;
    Index count = 0;
    for (Index t = 0; t < v.size(); ++t) {
        sum += v[t];
        ++count;
        const double dev = v[t] - sum / static_cast<double>(count);
        s_up = std::max(0.0, s_up + dev - allowance);
        s_dn = std::max(0.0, s_dn - dev - allowance);
        if (s_up > threshold || s_dn > threshold) {
            const bool upper = s_up >= s_dn;
            out.positions.push_back(static_cast<int>(t) + position_offset);
            out.scores.push_back(upper ? s_up : s_dn);
            out.directions.push_back(upper ? CpDirection::Upper : CpDirection::Lower);
            s_up = s_dn = sum = 0.0;
            count = 0;
        }
    }
    return out;
}

}  // namespace

ChangePointSet cusum_a(const Sequence& seq, double threshold, double accuracy) {
    validate_sequence(seq, "cusum_a");
    return cusum_core(seq, threshold, accuracy, Detector::CusumA, 0);
}

ChangePointSet cusum_b(const Sequence& seq, double threshold, double drift) {
    validate_sequence(seq, "cusum_b");
    const Index n = seq.size();
    Sequence diffs(n - 1);
    for (Index i = 0; i + 1 < n; ++i) diffs[i] = seq[i + 1] - seq[i];
    // alarm on diff j = x_{j+1} - x_j maps to sequence position j+1
    return cusum_core(diffs, threshold, drift, Detector::CusumB, 1);
}

ChangePointSet filter_changepoints(const ChangePointSet& cps, int min_gap) {
    if (min_gap < 0) throw std::invalid_argument("filter_changepoints: min_gap must be >= 0");
    if (!std::is_sorted(cps.positions.begin(), cps.positions.end()))
        throw std::invalid_argument("filter_changepoints: positions must be sorted");

    ChangePointSet out;
    out.kind = cps.kind;
    int last_kept = std::numeric_limits<int>::min();
    for (std::size_t i = 0; i < cps.positions.size(); ++i) {
        if (!out.positions.empty() && cps.positions[i] - last_kept <= min_gap) continue;
        last_kept = cps.positions[i];
        out.positions.push_back(cps.positions[i]);
        if (i < cps.scores.size()) out.scores.push_back(cps.scores[i]);
        if (i < cps.directions.size()) out.directions.push_back(cps.directions[i]);
    }
    return out;
}

namespace {

// Residual sum of squares and design log-determinant of one linear regime
// over [a, b), b - a >= 2. Regressor is the global index; its centered
// moment is exact for consecutive integers.
struct RegimeFit {
    double rss;
    double log_det;
};

RegimeFit fit_regime(const Sequence& seq, int a, int b) {
    const double m = b - a;
    double sx = 0.0, stx = 0.0;
    for (int t = a; t < b; ++t) {
        sx += seq[t];
        stx += static_cast<double>(t) * seq[t];
    }
    const double xbar = sx / m;
    const double tbar = 0.5 * (a + b - 1);
    const double sxx = m * (m * m - 1.0) / 12.0;
    const double sxy = stx - tbar * sx;
    double syy = 0.0;
    for (int t = a; t < b; ++t) {
        const double d = seq[t] - xbar;
        syy += d * d;
    }
    const double rss = std::max(syy - sxy * sxy / sxx, 0.0);
    return {rss, std::log(m * sxx)};
}

}  // namespace

BcdResult bcd_posterior(const Sequence& seq, double prob_floor) {
    const Index n = seq.size();
    if (n < 4) throw std::invalid_argument("bcd_posterior: need at least 4 samples");
    if (!seq.allFinite()) throw std::invalid_argument("bcd_posterior: sequence contains NaN or Inf");

    const int lo = 2, hi = static_cast<int>(n) - 2;
    std::vector<double> loglik(static_cast<std::size_t>(hi - lo + 1));
    std::vector<char> exact_fit(loglik.size(), 0);
    bool any_exact = false;
    for (int c = lo; c <= hi; ++c) {
        const RegimeFit left = fit_regime(seq, 0, c);
        const RegimeFit right = fit_regime(seq, c, static_cast<int>(n));
        const double rss = left.rss + right.rss;
        const std::size_t i = static_cast<std::size_t>(c - lo);
        if (rss == 0.0) {
            exact_fit[i] = 1;
            any_exact = true;
            loglik[i] = kInf;
        } else {
            loglik[i] = -0.5 * (left.log_det + right.log_det) -
                        0.5 * static_cast<double>(n - 4) * std::log(rss);
        }
    }

    BcdResult out;
    out.posterior = Eigen::VectorXd::Zero(n);
    if (any_exact) {
        // zero-residual cuts carry all the mass
        const double count = static_cast<double>(std::count(exact_fit.begin(), exact_fit.end(), 1));
        for (int c = lo; c <= hi; ++c)
            if (exact_fit[static_cast<std::size_t>(c - lo)]) out.posterior[c] = 1.0 / count;
    } else {
        const double m = *std::max_element(loglik.begin(), loglik.end());
        double z = 0.0;
        for (double l : loglik) z += std::exp(l - m);
        for (int c = lo; c <= hi; ++c)
            out.posterior[c] = std::exp(loglik[static_cast<std::size_t>(c - lo)] - m) / z;
    }

    // Local maxima above the floor; strict neighbors, plateaus take the
    // leftmost index.
    out.points.kind = Detector::Bcd;
    for (int c = lo; c <= hi; ++c) {
        const double v = out.posterior[c];
        if (v <= prob_floor) continue;
        if (c > lo && out.posterior[c - 1] >= v) continue;
        int r = c;
        while (r + 1 <= hi && out.posterior[r + 1] == v) ++r;
        if (r + 1 <= hi && out.posterior[r + 1] > v) continue;
        out.points.positions.push_back(c);
        out.points.scores.push_back(v);
    }
    return out;
}

namespace {

void bcd_recurse(const Sequence& seq, int lo, int hi, double prob_floor, int min_segment,
                 ChangePointSet& out) {
    const int n = hi - lo;
    if (n < 2 * min_segment || n < 4) return;
    const BcdResult r = bcd_posterior(seq.segment(lo, n), prob_floor);

    int best = -1;
    double best_p = prob_floor;
    const int c_lo = std::max(2, min_segment);
    const int c_hi = std::min(n - 2, n - min_segment);
    for (int c = c_lo; c <= c_hi; ++c) {
        if (r.posterior[c] > best_p) {
            best_p = r.posterior[c];
            best = c;
        }
    }
    if (best < 0) return;
    out.positions.push_back(lo + best);
    out.scores.push_back(best_p);
    bcd_recurse(seq, lo, lo + best, prob_floor, min_segment, out);
    bcd_recurse(seq, lo + best, hi, prob_floor, min_segment, out);
}

}  // namespace

ChangePointSet bcd_segment(const Sequence& seq, double prob_floor, int min_segment) {
    validate_sequence(seq, "bcd_segment");
    if (min_segment < 2) throw std::invalid_argument("bcd_segment: min_segment must be >= 2");
    ChangePointSet out;
    out.kind = Detector::Bcd;
    bcd_recurse(seq, 0, static_cast<int>(seq.size()), prob_floor, min_segment, out);

    // recursion emits in discovery order; sort by position, keeping scores aligned
    std::vector<std::size_t> idx(out.positions.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return out.positions[a] < out.positions[b]; });
    ChangePointSet sorted;
    sorted.kind = Detector::Bcd;
    for (std::size_t i : idx) {
        sorted.positions.push_back(out.positions[i]);
        sorted.scores.push_back(out.scores[i]);
    }
    return sorted;
}

}  // namespace pathclust
