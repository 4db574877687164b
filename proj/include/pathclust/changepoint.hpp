#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace pathclust {

using Index = Eigen::Index;

// The object every detector segments: a finite real sequence, here the gap
// distances along a Hamiltonian path.
using Sequence = Eigen::VectorXd;

enum class SegmentModel { Constant, Linear };

/// An exact partition of [0, N) into k index-contiguous segments.
/// breakpoints[i] is the first index of segment i+1, so segment i spans
/// [breakpoints[i-1], breakpoints[i]).
struct Segmentation {
    std::vector<int> breakpoints;               // strictly increasing, in (0, N)
    int k = 1;                                  // segment count = breakpoints.size() + 1
    SegmentModel model = SegmentModel::Constant;
    std::vector<Eigen::Vector2d> params;        // per segment (intercept, slope); slope 0 for Constant
    double loss = 0.0;                          // L: total squared residual
    double score = 0.0;                         // J: L/SST + k/N (k/N when SST = 0)
};

enum class Detector { CusumA, CusumB, Jenks, Bcd, Optimal };
enum class CpDirection { Upper, Lower };

std::string detector_name(Detector d);
Detector detector_from_name(const std::string& name);

/// Sequence positions where the generating regime shifts. A position c means
/// the values from index c onward belong to the next segment. Scores are
/// detector-specific (posterior probability, CUSUM statistic at alarm, or
/// within-class SS reduction).
struct ChangePointSet {
    Detector kind = Detector::CusumA;
    std::vector<int> positions;
    std::vector<double> scores;
    std::vector<CpDirection> directions;  // CUSUM only; empty otherwise

    std::size_t size() const { return positions.size(); }
};

// Exact penalized segmentation: minimizes J = L/SST + k/N over all
// segmentations with k in [1, max_k] by dynamic programming, fitting each
// segment by least squares under the chosen model. When SST = 0 the score is
// k/N and the single-segment solution is returned.
Segmentation segment_optimal(const Sequence& seq, int max_k, SegmentModel model);

// Fisher's optimal 1-D partition of the sequence (by index, not by sorted
// value) into k contiguous classes minimizing total within-class sum of
// squared deviations; exact DP, deterministic. Returns the k-1 break
// positions; each score is the SS increase that merging the break away
// would cost.
ChangePointSet jenks_breaks(const Sequence& seq, int k);

// Two-sided tabular CUSUM over mean-centered deviations:
//   S+_t = max(0, S+_{t-1} + (x_t - xbar) - accuracy)
//   S-_t = max(0, S-_{t-1} - (x_t - xbar) - accuracy)
// with xbar the running mean of the samples seen since the last alarm.
// Crossing `threshold` emits an upper/lower change point at the crossing
// index, resets both statistics, and restarts the reference mean.
ChangePointSet cusum_a(const Sequence& seq, double threshold, double accuracy);

// Same recursion applied to first differences: alarms on local jumps, so a
// jump between x_{c-1} and x_c is reported at position c. `drift` plays the
// accuracy role.
ChangePointSet cusum_b(const Sequence& seq, double threshold, double drift);

// Greedy left-to-right sweep: keep the first point, then keep a candidate
// only when it is more than min_gap positions past the last kept point.
ChangePointSet filter_changepoints(const ChangePointSet& cps, int min_gap);

// Segmentation breakpoints as a ChangePointSet (kind Optimal), scored with
// the same merge-cost measure jenks_breaks reports.
ChangePointSet to_changepoints(const Segmentation& seg, const Sequence& seq);

/// Posterior over the position of a single two-regime cut. `posterior` has
/// one entry per sequence index; entries off the candidate support
/// [2, N-2] are zero and the whole curve sums to 1.
struct BcdResult {
    Eigen::VectorXd posterior;
    ChangePointSet points;  // local maxima of the posterior above the floor
};

// Bayesian change-point scan: for every candidate cut c the sequence is
// modeled as two independent linear regimes [0,c) and [c,N) with shared
// Gaussian noise; slope/intercept coefficients and the noise scale are
// integrated out under flat and Jeffreys priors, giving
//   p(y | c) ∝ |X_c^T X_c|^{-1/2} · RSS(c)^{-(N-4)/2},
// which is normalized over c to the posterior curve. Requires N >= 4.
BcdResult bcd_posterior(const Sequence& seq, double prob_floor = 0.5);

// Multi-cut wrapper: applies the single-cut scan recursively (binary
// segmentation). A cut is accepted when its posterior maximum exceeds
// prob_floor; both halves are then scanned independently, down to segments
// of min_segment samples. Scores are the per-segment posterior maxima.
ChangePointSet bcd_segment(const Sequence& seq, double prob_floor = 0.5,
                           int min_segment = 4);

}  // namespace pathclust
