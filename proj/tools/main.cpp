#include "pathclust/pipeline.hpp"
#include "pathclust/serialize.hpp"
#include "pathclust/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace pathclust;

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    return j;
}

ColumnRef parse_column_ref(const std::string& s) {
    try {
        std::size_t used = 0;
        const int idx = std::stoi(s, &used);
        if (used == s.size()) return idx;
    } catch (...) {
    }
    return s;
}

// Shared flag set for subcommands that build a pipeline config. Flags
// override config-file keys, which override the PATHCLUST_OUT_DIR env var.
struct ConfigFlags {
    std::string config_file;
    std::string input, labels_col, detector, model, out_dir;
    bool no_header = false;
    bool no_standardize = false;
    bool no_svg = false;
    std::optional<int> lift_degree, k, max_k, min_gap;
    std::optional<double> threshold, accuracy, drift, prob_floor;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_file, "JSON config file; flags override its keys");
        cmd->add_option("--input", input, "input CSV");
        cmd->add_option("--labels-col", labels_col, "label column, by name or zero-based index");
        cmd->add_flag("--no-header", no_header, "input has no header row");
        cmd->add_flag("--no-standardize", no_standardize, "skip column-wise z-scoring");
        cmd->add_option("--lift-degree", lift_degree,
                        "polynomial feature-map degree (omit to skip the lift)");
        cmd->add_option("--detector", detector, "cusum-a|cusum-b|jenks|bcd|optimal");
        cmd->add_option("--threshold", threshold, "CUSUM alarm threshold");
        cmd->add_option("--accuracy", accuracy, "CUSUM-A allowance");
        cmd->add_option("--drift", drift, "CUSUM-B allowance on first differences");
        cmd->add_option("--k", k, "class count for jenks");
        cmd->add_option("--max-k", max_k, "maximum segment count for optimal");
        cmd->add_option("--prob-floor", prob_floor, "posterior floor for bcd");
        cmd->add_option("--min-gap", min_gap, "minimum spacing between kept change points");
        cmd->add_option("--model", model, "segment model for optimal: constant|linear");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--out-dir", out_dir, "output directory");
        cmd->add_flag("--no-svg", no_svg, "skip the sequence plot");
    }

    PipelineConfig build() const {
        PipelineConfig cfg;
        if (const char* env = std::getenv("PATHCLUST_OUT_DIR")) cfg.out_dir = env;
        if (!config_file.empty()) cfg = config_from_json(load_json_file(config_file));
        if (!config_file.empty() && cfg.out_dir == "out") {
            // config did not set out_dir: fall back to env again
            if (const char* env = std::getenv("PATHCLUST_OUT_DIR")) cfg.out_dir = env;
        }
        if (!input.empty()) cfg.input = input;
        if (!labels_col.empty()) cfg.label_column = parse_column_ref(labels_col);
        if (no_header) cfg.has_header = false;
        if (no_standardize) cfg.standardize = false;
        if (lift_degree) cfg.lift_degree = lift_degree;
        if (!detector.empty()) cfg.detector = detector_from_name(detector);
        if (threshold) cfg.threshold = threshold;
        if (accuracy) cfg.accuracy = accuracy;
        if (drift) cfg.drift = drift;
        if (k) cfg.k = k;
        if (max_k) cfg.max_k = max_k;
        if (prob_floor) cfg.prob_floor = prob_floor;
        if (min_gap) cfg.min_gap = min_gap;
        if (!model.empty()) {
            if (model == "constant") cfg.model = SegmentModel::Constant;
            else if (model == "linear") cfg.model = SegmentModel::Linear;
            else throw std::invalid_argument("config: model must be 'constant' or 'linear'");
        }
        if (seed) cfg.seed = *seed;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (no_svg) cfg.write_svg = false;
        return cfg;
    }
};

int cmd_run(const ConfigFlags& flags) {
    PipelineConfig cfg = flags.build();
    const RunReport report = run_pipeline(cfg);
    std::cout << "samples=" << report.samples << " attributes=" << report.attributes
              << " changepoints=" << report.changepoints.positions.size()
              << " clusters=" << report.clusters;
    if (report.ami) std::cout << " ami=" << *report.ami;
    std::cout << "\nartifacts in " << cfg.out_dir << "\n";
    return 0;
}

int cmd_path(const ConfigFlags& flags, bool want_svg) {
    PipelineConfig cfg = flags.build();
    if (cfg.input.empty()) throw std::invalid_argument("config: no input file given");

    LoadOptions opts;
    opts.has_header = cfg.has_header;
    opts.label_column = cfg.label_column;
    DataMatrix data = load_csv(cfg.input, opts);
    if (cfg.standardize) data = standardize(data);
    if (cfg.lift_degree) data = polynomial_lift(data, *cfg.lift_degree);

    const Index start = select_start(data.values);
    const HamiltonianPath path = data.rows() > cfg.streaming_threshold
                                     ? build_path_streaming(data.values, start)
                                     : build_path(data.values, start);

    std::filesystem::create_directories(cfg.out_dir);
    const auto out = std::filesystem::path(cfg.out_dir) / "path.json";
    nlohmann::json j = path;
    std::ofstream(out, std::ios::binary) << j.dump(2) << "\n";
    std::cout << out.string() << "\n";

    if (want_svg) {
        std::optional<ClusterLabeling> classes;
        if (data.ground_truth) {
            ClusterLabeling truth;
            truth.labels = *data.ground_truth;
            truth.k = 1 + *std::max_element(truth.labels.begin(), truth.labels.end());
            classes = std::move(truth);
        }
        const auto svg_path = std::filesystem::path(cfg.out_dir) / "sequence.svg";
        std::ofstream(svg_path, std::ios::binary)
            << render_sequence_svg(path, classes, ChangePointSet{});
        std::cout << svg_path.string() << "\n";
    }
    return 0;
}

int cmd_detect(const ConfigFlags& flags, const std::string& sequence_file) {
    PipelineConfig cfg = flags.build();
    validate_detector_params(cfg);

    const nlohmann::json j = load_json_file(sequence_file);
    Sequence gaps;
    if (j.is_array()) {
        const auto v = j.get<std::vector<double>>();
        gaps = Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
    } else {
        const HamiltonianPath path = j.get<HamiltonianPath>();
        gaps = path.gaps;
    }

    const ChangePointSet cps = run_detector(gaps, cfg);
    std::cout << serialize_changepoints(cps, detector_params_json(cfg)).dump(2) << "\n";
    return 0;
}

ClusterLabeling load_labels(const std::string& path, const std::string& col, bool has_header) {
    LoadOptions opts;
    opts.has_header = has_header;
    // default: last column of the file
    opts.label_column = col.empty() ? ColumnRef{-1} : parse_column_ref(col);
    if (std::holds_alternative<int>(*opts.label_column) && std::get<int>(*opts.label_column) < 0) {
        // peek at the width to resolve the "last column" shorthand
        LoadOptions probe;
        probe.has_header = has_header;
        const DataMatrix head = load_csv(path, probe);
        opts.label_column = static_cast<int>(head.cols()) - 1;
    }
    const DataMatrix data = load_csv(path, opts);
    ClusterLabeling out;
    out.labels = *data.ground_truth;
    out.k = 1 + *std::max_element(out.labels.begin(), out.labels.end());
    return out;
}

int cmd_score(const std::string& file_a, const std::string& file_b, const std::string& col_a,
              const std::string& col_b, bool no_header) {
    const ClusterLabeling a = load_labels(file_a, col_a, !no_header);
    const ClusterLabeling b = load_labels(file_b, col_b, !no_header);
    nlohmann::json j = ami_score(a, b);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_gen(const std::string& kind, Index n, Index dims, int clusters, double separation,
            std::uint64_t seed, const std::string& out_file) {
    DataMatrix data;
    if (kind == "mgd") {
        data = generate_mgd(n, dims, clusters, separation, seed);
        data.column_names.clear();
        for (Index j = 0; j < data.cols(); ++j)
            data.column_names.push_back("a" + std::to_string(j));
    } else {
        data = generate_shape(shape_from_name(kind), n, seed);
        data.column_names = {"x", "y"};
    }
    write_csv(data, out_file, &*data.ground_truth, "class");
    std::cout << out_file << ": " << data.rows() << " rows, " << data.cols()
              << " attributes + class\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cluster numeric datasets by cutting a greedy nearest-neighbor "
                 "path sequence at its change points"};
    app.require_subcommand(1);

    ConfigFlags run_flags;
    auto* run = app.add_subcommand("run", "full pipeline: load, path, detect, label, score");
    run_flags.attach(run);

    ConfigFlags path_flags;
    auto* path_cmd = app.add_subcommand("path", "build the path and gap sequence only");
    path_flags.attach(path_cmd);
    bool path_svg = false;
    path_cmd->add_flag("--svg", path_svg, "also render sequence.svg");

    ConfigFlags detect_flags;
    std::string seq_file;
    auto* detect = app.add_subcommand("detect", "run a detector on a saved gap sequence");
    detect_flags.attach(detect);
    detect->add_option("sequence", seq_file, "path.json or a JSON array of gap values")
        ->required();

    std::string score_a, score_b, score_col_a, score_col_b;
    bool score_no_header = false;
    auto* score = app.add_subcommand("score", "AMI between the label columns of two CSV files");
    score->add_option("a", score_a, "first CSV")->required();
    score->add_option("b", score_b, "second CSV")->required();
    score->add_option("--col-a", score_col_a, "label column of a (default: last)");
    score->add_option("--col-b", score_col_b, "label column of b (default: last)");
    score->add_flag("--no-header", score_no_header, "files have no header row");

    std::string gen_kind = "mgd", gen_out = "generated.csv";
    Index gen_n = 3000, gen_dims = 60;
    int gen_clusters = 4;
    double gen_sep = 10.0;
    std::uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("gen", "write a synthetic benchmark dataset");
    gen->add_option("--kind", gen_kind, "mgd|circles|moons|blobs|aniso|varied");
    gen->add_option("--n", gen_n, "sample count");
    gen->add_option("--dims", gen_dims, "attribute count (mgd)");
    gen->add_option("--clusters", gen_clusters, "class count (mgd)");
    gen->add_option("--separation", gen_sep, "minimum center distance (mgd)");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "output CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_flags);
        if (path_cmd->parsed()) return cmd_path(path_flags, path_svg);
        if (detect->parsed()) return cmd_detect(detect_flags, seq_file);
        if (score->parsed())
            return cmd_score(score_a, score_b, score_col_a, score_col_b, score_no_header);
        if (gen->parsed())
            return cmd_gen(gen_kind, gen_n, gen_dims, gen_clusters, gen_sep, gen_seed, gen_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
