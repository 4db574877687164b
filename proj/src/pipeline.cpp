#include "pathclust/pipeline.hpp"

#include "pathclust/serialize.hpp"
#include "pathclust/svg.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace pathclust {
namespace {

template <typename T>
void read_key(const nlohmann::json& j, const char* key, std::optional<T>& out) {
    if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

template <typename T>
void read_key(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

}  // namespace

PipelineConfig config_from_json(const nlohmann::json& j) {
    static const std::vector<std::string> known = {
        "input",    "labels_col", "header", "standardize", "lift_degree", "detector",
        "threshold", "accuracy",  "drift",  "k",           "max_k",       "prob_floor",
        "min_gap",  "seed",       "out_dir", "svg",        "model",       "streaming_threshold"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            fail("unknown key '" + key + "'");
    }

    PipelineConfig cfg;
    read_key(j, "input", cfg.input);
    if (j.contains("labels_col") && !j.at("labels_col").is_null()) {
        const auto& v = j.at("labels_col");
        if (v.is_number_integer()) cfg.label_column = v.get<int>();
        else if (v.is_string()) cfg.label_column = v.get<std::string>();
        else fail("labels_col must be an integer index or a column name");
    }
    read_key(j, "header", cfg.has_header);
    read_key(j, "standardize", cfg.standardize);
    read_key(j, "lift_degree", cfg.lift_degree);
    if (j.contains("detector")) cfg.detector = detector_from_name(j.at("detector").get<std::string>());
    read_key(j, "threshold", cfg.threshold);
    read_key(j, "accuracy", cfg.accuracy);
    read_key(j, "drift", cfg.drift);
    read_key(j, "k", cfg.k);
    read_key(j, "max_k", cfg.max_k);
    read_key(j, "prob_floor", cfg.prob_floor);
    read_key(j, "min_gap", cfg.min_gap);
    read_key(j, "seed", cfg.seed);
    read_key(j, "out_dir", cfg.out_dir);
    read_key(j, "svg", cfg.write_svg);
    read_key(j, "streaming_threshold", cfg.streaming_threshold);
    if (j.contains("model")) {
        const auto m = j.at("model").get<std::string>();
        if (m == "constant") cfg.model = SegmentModel::Constant;
        else if (m == "linear") cfg.model = SegmentModel::Linear;
        else fail("model must be 'constant' or 'linear'");
    }
    return cfg;
}

nlohmann::json config_to_json(const PipelineConfig& cfg) {
    nlohmann::json j;
    j["input"] = cfg.input;
    if (cfg.label_column) {
        if (std::holds_alternative<int>(*cfg.label_column))
            j["labels_col"] = std::get<int>(*cfg.label_column);
        else
            j["labels_col"] = std::get<std::string>(*cfg.label_column);
    }
    j["header"] = cfg.has_header;
    j["standardize"] = cfg.standardize;
    if (cfg.lift_degree) j["lift_degree"] = *cfg.lift_degree;
    j["detector"] = detector_name(cfg.detector);
    if (cfg.threshold) j["threshold"] = *cfg.threshold;
    if (cfg.accuracy) j["accuracy"] = *cfg.accuracy;
    if (cfg.drift) j["drift"] = *cfg.drift;
    if (cfg.k) j["k"] = *cfg.k;
    if (cfg.max_k) j["max_k"] = *cfg.max_k;
    if (cfg.prob_floor) j["prob_floor"] = *cfg.prob_floor;
    if (cfg.min_gap) j["min_gap"] = *cfg.min_gap;
    j["model"] = cfg.model == SegmentModel::Constant ? "constant" : "linear";
    j["seed"] = cfg.seed;
    j["out_dir"] = cfg.out_dir;
    j["svg"] = cfg.write_svg;
    return j;
}

void validate_config(PipelineConfig& cfg) {
    if (cfg.input.empty()) fail("no input file given");
    if (cfg.out_dir.empty()) fail("no output directory given");
    if (cfg.lift_degree && *cfg.lift_degree < 1) fail("lift_degree must be >= 1");
    validate_detector_params(cfg);
}

void validate_detector_params(PipelineConfig& cfg) {
    if (cfg.min_gap && *cfg.min_gap < 0) fail("min_gap must be >= 0");

    switch (cfg.detector) {
        case Detector::CusumA:
            // documented defaults, tuned on the digits runs; not universal
            if (!cfg.threshold) cfg.threshold = 19.0;
            if (!cfg.accuracy) cfg.accuracy = 4.0;
            break;
        case Detector::CusumB: {
            std::string missing;
            if (!cfg.threshold) missing = "threshold";
            if (!cfg.drift) missing += missing.empty() ? "drift" : ", drift";
            if (!missing.empty())
                fail("detector 'cusum-b' requires parameters: " + missing);
            break;
        }
        case Detector::Jenks:
            if (!cfg.k) fail("detector 'jenks' requires parameter: k");
            if (*cfg.k < 1) fail("k must be >= 1");
            break;
        case Detector::Optimal:
            if (!cfg.max_k) fail("detector 'optimal' requires parameter: max_k");
            if (*cfg.max_k < 1) fail("max_k must be >= 1");
            break;
        case Detector::Bcd:
            if (!cfg.prob_floor) cfg.prob_floor = 0.5;
            if (*cfg.prob_floor < 0.0 || *cfg.prob_floor > 1.0)
                fail("prob_floor must be in [0, 1]");
            break;
    }
    if (cfg.threshold && *cfg.threshold <= 0.0) fail("threshold must be > 0");
    if (cfg.accuracy && *cfg.accuracy < 0.0) fail("accuracy must be >= 0");
    if (cfg.drift && *cfg.drift < 0.0) fail("drift must be >= 0");
}

ChangePointSet run_detector(const Sequence& gaps, const PipelineConfig& cfg) {
    ChangePointSet cps;
    switch (cfg.detector) {
        case Detector::CusumA:
            cps = cusum_a(gaps, cfg.threshold.value(), cfg.accuracy.value());
            break;
        case Detector::CusumB:
            cps = cusum_b(gaps, cfg.threshold.value(), cfg.drift.value());
            break;
        case Detector::Jenks:
            cps = jenks_breaks(gaps, cfg.k.value());
            break;
        case Detector::Bcd:
            cps = bcd_segment(gaps, cfg.prob_floor.value_or(0.5));
            break;
        case Detector::Optimal:
            cps = to_changepoints(segment_optimal(gaps, cfg.max_k.value(), cfg.model), gaps);
            break;
    }
    if (cfg.min_gap && *cfg.min_gap > 0) cps = filter_changepoints(cps, *cfg.min_gap);
    return cps;
}

nlohmann::json detector_params_json(const PipelineConfig& cfg) {
    nlohmann::json p;
    switch (cfg.detector) {
        case Detector::CusumA:
            p["threshold"] = cfg.threshold.value();
            p["accuracy"] = cfg.accuracy.value();
            break;
        case Detector::CusumB:
            p["threshold"] = cfg.threshold.value();
            p["drift"] = cfg.drift.value();
            break;
        case Detector::Jenks:
            p["k"] = cfg.k.value();
            break;
        case Detector::Bcd:
            p["prob_floor"] = cfg.prob_floor.value_or(0.5);
            break;
        case Detector::Optimal:
            p["max_k"] = cfg.max_k.value();
            p["model"] = cfg.model == SegmentModel::Constant ? "constant" : "linear";
            break;
    }
    if (cfg.min_gap) p["min_gap"] = *cfg.min_gap;
    return p;
}

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(name) + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

}  // namespace

RunReport run_pipeline(const PipelineConfig& config) {
    PipelineConfig cfg = config;
    validate_config(cfg);

    const DataMatrix raw = stage("dataset", [&] {
        LoadOptions opts;
        opts.has_header = cfg.has_header;
        opts.label_column = cfg.label_column;
        DataMatrix d = load_csv(cfg.input, opts);
        if (d.rows() < 2) throw std::runtime_error("need at least 2 samples");
        return d;
    });

    const DataMatrix prepared = stage("dataset", [&] {
        DataMatrix d = cfg.standardize ? standardize(raw) : raw;
        if (cfg.lift_degree && *cfg.lift_degree >= 1) d = polynomial_lift(d, *cfg.lift_degree);
        return d;
    });

    RunReport report;
    report.samples = prepared.rows();
    report.attributes = prepared.cols();

    report.path = stage("geometry", [&] {
        const Index start = select_start(prepared.values);
        return prepared.rows() > cfg.streaming_threshold
                   ? build_path_streaming(prepared.values, start)
                   : build_path(prepared.values, start);
    });

    report.changepoints = stage("changepoint", [&] { return run_detector(report.path.gaps, cfg); });

    report.labeling =
        stage("evaluation", [&] { return labels_from_changepoints(report.path, report.changepoints); });
    report.clusters = report.labeling.k;

    std::optional<AmiReport> ami;
    if (raw.ground_truth) {
        ami = stage("evaluation", [&] {
            ClusterLabeling truth;
            truth.labels = *raw.ground_truth;
            truth.k = 1 + *std::max_element(truth.labels.begin(), truth.labels.end());
            return ami_score(truth, report.labeling);
        });
        report.ami = ami->ami;
    }

    stage("output", [&] {
        namespace fs = std::filesystem;
        const fs::path dir(cfg.out_dir);
        fs::create_directories(dir);

        nlohmann::json jpath = report.path;
        write_text(dir / "path.json", jpath.dump(2) + "\n");
        report.artifacts.push_back("path.json");

        write_text(dir / "changepoints.json",
                   serialize_changepoints(report.changepoints, detector_params_json(cfg)).dump(2) +
                       "\n");
        report.artifacts.push_back("changepoints.json");

        write_csv(raw, (dir / "labels.csv").string(), &report.labeling.labels);
        report.artifacts.push_back("labels.csv");

        if (ami) {
            nlohmann::json jami = *ami;
            write_text(dir / "ami.json", jami.dump(2) + "\n");
            report.artifacts.push_back("ami.json");
        }

        if (cfg.write_svg) {
            std::optional<ClusterLabeling> classes;
            if (raw.ground_truth) {
                ClusterLabeling truth;
                truth.labels = *raw.ground_truth;
                truth.k = 1 + *std::max_element(truth.labels.begin(), truth.labels.end());
                classes = std::move(truth);
            }
            write_text(dir / "sequence.svg",
                       render_sequence_svg(report.path, classes, report.changepoints));
            report.artifacts.push_back("sequence.svg");
        }

        nlohmann::json jreport;
        jreport["input"] = cfg.input;
        jreport["samples"] = report.samples;
        jreport["attributes"] = report.attributes;
        jreport["detector"] = detector_name(cfg.detector);
        jreport["changepoints"] = report.changepoints.positions.size();
        jreport["clusters"] = report.clusters;
        jreport["ami"] = report.ami ? nlohmann::json(*report.ami) : nlohmann::json(nullptr);
        jreport["config"] = config_to_json(cfg);
        jreport["artifacts"] = report.artifacts;
        write_text(dir / "report.json", jreport.dump(2) + "\n");
        report.artifacts.push_back("report.json");
        return 0;
    });

    return report;
}

}  // namespace pathclust
