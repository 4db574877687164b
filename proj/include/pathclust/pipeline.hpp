#pragma once

#include "pathclust/changepoint.hpp"
#include "pathclust/dataset.hpp"
#include "pathclust/evaluation.hpp"
#include "pathclust/geometry.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pathclust {

/// One declarative run manifest: load -> standardize/lift -> path -> detect
/// -> label -> score. Detector parameters are optional so validation can
/// tell "missing" from "default"; validate() applies documented defaults
/// (CUSUM-A: threshold 19, accuracy 4) and rejects configs whose detector
/// has no value for a required parameter.
struct PipelineConfig {
    std::string input;
    std::optional<ColumnRef> label_column;
    bool has_header = true;
    bool standardize = true;
    std::optional<int> lift_degree;

    Detector detector = Detector::CusumB;
    std::optional<double> threshold;   // cusum-a, cusum-b
    std::optional<double> accuracy;    // cusum-a
    std::optional<double> drift;       // cusum-b
    std::optional<int> k;              // jenks
    std::optional<int> max_k;          // optimal
    std::optional<double> prob_floor;  // bcd
    std::optional<int> min_gap;        // post-hoc filtering, 0 = off
    SegmentModel model = SegmentModel::Linear;  // optimal

    std::uint64_t seed = 0;
    std::string out_dir = "out";
    bool write_svg = true;

    // Paths larger than this are built with the streaming walker instead of
    // materializing the distance matrix.
    Index streaming_threshold = 20000;
};

// Config-file / flag-mirror keys; unknown keys are rejected.
PipelineConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const PipelineConfig& cfg);

// Throws std::invalid_argument before any compute when the chosen detector
// is missing a required parameter or the config is otherwise inconsistent.
void validate_config(PipelineConfig& cfg);

// Detector-parameter subset of validate_config, for runs that start from a
// saved sequence instead of an input file.
void validate_detector_params(PipelineConfig& cfg);

// Runs the configured detector (plus min_gap filtering) on a gap sequence.
ChangePointSet run_detector(const Sequence& gaps, const PipelineConfig& cfg);

// Detector parameters as they entered the run, for artifact provenance.
nlohmann::json detector_params_json(const PipelineConfig& cfg);

struct RunReport {
    Index samples = 0;
    Index attributes = 0;       // after lift, what the path walked
    int clusters = 0;
    std::optional<double> ami;  // present when ground truth was available
    std::vector<std::string> artifacts;

    HamiltonianPath path;
    ChangePointSet changepoints;
    ClusterLabeling labeling;
};

// Executes the full pipeline and writes path.json, changepoints.json,
// labels.csv, ami.json (when ground truth is present), sequence.svg and
// report.json into cfg.out_dir. All artifacts are deterministic functions
// of (config, input). Errors from any stage are rethrown with the stage
// name prefixed.
RunReport run_pipeline(const PipelineConfig& cfg);

}  // namespace pathclust
