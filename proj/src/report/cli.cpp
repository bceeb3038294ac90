#include "vdeval/cli.hpp"

#include "vdeval/report.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <map>
#include <set>

namespace vdeval {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string gt;
    std::string detections;
    std::string manifest;
    std::string classes;
    std::string out = ".";
    std::string conf = "auto";
    std::string filter_policy = "reject";
    std::string format = "all";
    std::string interpolation = "none";
    std::string mean_iou = "tp";
    bool skip_invalid = false;
    double match_iou = kDefaultMatchIou;
    double link_iou = kDefaultLinkIou;
    double edge_eps = kDefaultEdgeTolerance;
    int grid = kDefaultCentroidGrid;
    int area_bins = kDefaultAreaBins;
};

void add_input_options(CLI::App* cmd, Options& o, bool detections_required) {
    cmd->add_option("--gt", o.gt, "Ground-truth directory (VOC .xml / YOLO .txt) or file")->required();
    auto* det = cmd->add_option("--detections", o.detections, "Detections, JSON lines");
    if (detections_required) det->required();
    cmd->add_option("--manifest", o.manifest, "Dataset manifest (JSON)");
    cmd->add_option("--classes", o.classes, "Class table for YOLO labels, one name per line");
    cmd->add_option("--filter-policy", o.filter_policy, "Out-of-range boxes: reject or clamp")
        ->check(CLI::IsMember({"reject", "clamp"}));
    cmd->add_option("--out", o.out, "Output directory");
}

void add_metric_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--match-iou", o.match_iou, "IOU needed for a true positive")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--link-iou", o.link_iou, "IOU needed to link ground truth across frames")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--conf", o.conf, "Operating confidence threshold, or 'auto' (max F1)");
    cmd->add_flag("--skip-invalid-detections", o.skip_invalid,
                  "Skip and log invalid detection lines instead of failing");
    cmd->add_option("--ap-interpolation", o.interpolation, "none, voc11 or coco101")
        ->check(CLI::IsMember({"none", "voc11", "coco101"}));
    cmd->add_option("--mean-iou", o.mean_iou, "tp (true positives) or best (best per ground truth)")
        ->check(CLI::IsMember({"tp", "best"}));
    cmd->add_option("--edge-eps", o.edge_eps, "Edge-of-frame tolerance (normalized)");
    cmd->add_option("--format", o.format, "json, csv or all")
        ->check(CLI::IsMember({"json", "csv", "all"}));
}

std::optional<double> parse_conf(const std::string& text) {
    if (text == "auto") return std::nullopt;
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
        throw ValidationError("--conf must be a number in [0,1] or 'auto', got '" + text + "'");
    }
    return v;
}

RunConfig to_config(const Options& o) {
    RunConfig c;
    c.gt_path = o.gt;
    c.detections_path = o.detections;
    if (!o.manifest.empty()) c.manifest_path = o.manifest;
    if (!o.classes.empty()) c.classes_path = o.classes;
    c.out_dir = o.out;
    c.match_iou = o.match_iou;
    c.link_iou = o.link_iou;
    c.conf_threshold = parse_conf(o.conf);
    c.filter_policy = o.filter_policy == "clamp" ? FilterPolicy::Clamp : FilterPolicy::Reject;
    c.detection_policy = o.skip_invalid ? ErrorPolicy::SkipAndLog : ErrorPolicy::FailFast;
    c.interpolation = o.interpolation == "voc11"     ? ApInterpolation::Voc11Point
                      : o.interpolation == "coco101" ? ApInterpolation::Coco101Point
                                                     : ApInterpolation::None;
    c.mean_iou_mode = o.mean_iou == "best" ? MeanIouMode::BestPerGroundTruth : MeanIouMode::TruePositives;
    c.edge_tolerance = o.edge_eps;
    c.centroid_grid = o.grid;
    c.area_bins = o.area_bins;
    c.format = o.format == "json" ? OutputFormat::Json
               : o.format == "csv" ? OutputFormat::Csv
                                   : OutputFormat::All;
    return c;
}

bool wants_json(OutputFormat f) { return f != OutputFormat::Csv; }
bool wants_csv(OutputFormat f) { return f != OutputFormat::Json; }

using Outputs = std::vector<std::pair<fs::path, std::string>>;

void write_all(const Outputs& outputs) {
    for (const auto& [path, contents] : outputs) write_file(path, contents);
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

void print_diagnostics(const std::vector<Diagnostic>& diags, std::ostream& err) {
    for (const auto& d : diags) err << "warning: " << d.location << ": " << d.message << '\n';
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto report = evaluate(config);
    print_diagnostics(report.diagnostics, err);

    Outputs outputs;
    if (wants_json(config.format)) outputs.emplace_back(config.out_dir / "report.json", dump(to_json(report)));
    if (wants_csv(config.format)) {
        outputs.emplace_back(config.out_dir / "pr_curve.csv", pr_curve_csv(report.accuracy.curve));
        outputs.emplace_back(config.out_dir / "stability.csv", stability_csv(report.stability));
        outputs.emplace_back(config.out_dir / "failures.csv", failures_csv(report.failures));
        outputs.emplace_back(config.out_dir / "failure_records.csv", failure_records_csv(report.failures));
    }
    write_all(outputs);

    const auto& a = report.accuracy;
    const auto& s = report.stability;
    auto metric = [](const MetricMean& m) { return m.defined() ? format_fixed(m.value, 6) : std::string("undefined"); };
    out << "AP50 " << format_fixed(a.ap.ap50, 6) << "  AP75 " << format_fixed(a.ap.ap75, 6)
        << "  AP50:95 " << format_fixed(a.ap.ap_range, 6) << "  IOU " << format_fixed(a.mean_iou.value, 6)
        << '\n'
        << "conf " << format_fixed(a.conf_threshold, 6) << (a.threshold_auto ? " (auto)" : "")
        << "  precision " << format_fixed(a.precision, 6) << "  recall " << format_fixed(a.recall, 6)
        << "  tp " << a.counts.true_positives << "  fp " << a.counts.false_positives << "  fn "
        << a.counts.false_negatives << '\n'
        << "translation " << metric(s.translation) << "  scale/aspect " << metric(s.scale_aspect)
        << "  fragmentation " << metric(s.fragmentation) << '\n';
    return kExitSuccess;
}

int cmd_stability(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto report = evaluate(config);
    print_diagnostics(report.diagnostics, err);
    nlohmann::ordered_json j;
    j["tool"] = {{"name", "vdeval"}, {"version", tool_version()}};
    j["config"] = config_stamp(config);
    j["conf_threshold"] = report.accuracy.conf_threshold;
    j["stability"] = to_json(report.stability);
    Outputs outputs;
    if (wants_json(config.format)) outputs.emplace_back(config.out_dir / "stability.json", dump(j));
    if (wants_csv(config.format)) outputs.emplace_back(config.out_dir / "stability.csv", stability_csv(report.stability));
    write_all(outputs);
    out << dump(j["stability"]);
    return kExitSuccess;
}

int cmd_failures(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto report = evaluate(config);
    print_diagnostics(report.diagnostics, err);
    nlohmann::ordered_json j;
    j["tool"] = {{"name", "vdeval"}, {"version", tool_version()}};
    j["config"] = config_stamp(config);
    j["conf_threshold"] = report.accuracy.conf_threshold;
    j["failures"] = to_json(report.failures);
    Outputs outputs;
    if (wants_json(config.format)) outputs.emplace_back(config.out_dir / "failures.json", dump(j));
    if (wants_csv(config.format)) {
        outputs.emplace_back(config.out_dir / "failures.csv", failures_csv(report.failures));
        outputs.emplace_back(config.out_dir / "failure_records.csv", failure_records_csv(report.failures));
    }
    write_all(outputs);
    out << failures_csv(report.failures);
    return kExitSuccess;
}

int cmd_convert(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto gt = load_ground_truth(config);
    print_diagnostics(gt.diagnostics, err);

    std::vector<std::string> classes = gt.class_names;
    if (classes.empty()) {
        std::set<std::string> names;
        for (const auto& f : gt.frames) {
            for (const auto& o : f.objects) names.insert(o.object_class);
        }
        classes.assign(names.begin(), names.end());
    }

    Outputs outputs;
    for (const auto& frame : gt.frames) {
        const auto& source = gt.sources.at(frame.id());
        outputs.emplace_back(config.out_dir / (source.stem().string() + ".txt"),
                             write_yolo_labels(frame, classes));
    }
    std::string table;
    for (const auto& c : classes) table += c + '\n';
    outputs.emplace_back(config.out_dir / "classes.txt", table);
    write_all(outputs);
    out << "converted " << gt.frames.size() << " frames, " << box_count(gt.frames) << " boxes, "
        << classes.size() << " classes\n";
    return kExitSuccess;
}

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto gt = load_ground_truth(config);
    print_diagnostics(gt.diagnostics, err);

    const auto centroids = centroid_distribution(gt.frames, config.centroid_grid);
    const auto edges = uniform_edges(config.area_bins);
    const auto areas = area_distribution(gt.frames, edges);

    nlohmann::ordered_json j;
    j["tool"] = {{"name", "vdeval"}, {"version", tool_version()}};
    j["inputs"] = {{"sha256", gt.digests}};
    j["binning"] = {{"centroid_grid", config.centroid_grid}, {"area_bins", config.area_bins},
                    {"boundary", "lower edge inclusive; value 1.0 in last bin"}};
    std::set<std::string> videos;
    for (const auto& f : gt.frames) videos.insert(f.video_id);
    j["totals"] = {{"videos", videos.size()}, {"frames", gt.frames.size()}, {"boxes", box_count(gt.frames)}};
    if (config.manifest_path) {
        j["splits"] = to_json(split_summary(gt.manifests, gt.frames));
    }
    j["centroid_total"] = centroids.total();
    j["area_counts"] = areas.counts;

    Outputs outputs;
    if (wants_json(config.format)) outputs.emplace_back(config.out_dir / "stats.json", dump(j));
    if (wants_csv(config.format)) {
        outputs.emplace_back(config.out_dir / "centroids.csv", centroid_csv(centroids));
        outputs.emplace_back(config.out_dir / "areas.csv", area_csv(areas));
    }
    write_all(outputs);
    out << dump(j["totals"]);
    if (j.contains("splits")) out << dump(j["splits"]);
    return kExitSuccess;
}

int cmd_tracklets(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto gt = load_ground_truth(config);
    print_diagnostics(gt.diagnostics, err);
    auto tracklets = build_all_tracklets(gt.frames, config.link_iou);

    if (!config.detections_path.empty()) {
        const auto dets = load_detections(config);
        print_diagnostics(dets.diagnostics, err);
        AccuracyConfig acc;
        acc.match_iou = config.match_iou;
        acc.conf_threshold = config.conf_threshold;
        const auto conf = evaluate_accuracy(dets.detections, gt.frames, acc).conf_threshold;
        attach_detections(tracklets, match_all(dets.detections, gt.frames, config.match_iou, conf));
    }

    std::map<std::string, std::vector<Tracklet>> by_video;
    for (const auto& f : gt.frames) by_video[f.video_id];
    for (auto& t : tracklets) by_video[t.video_id].push_back(std::move(t));

    Outputs outputs;
    for (const auto& [video, list] : by_video) {
        outputs.emplace_back(config.out_dir / "tracklets" / (video + ".json"),
                             dump(tracklets_to_json(video, list, config.link_iou)));
        out << video << ": " << list.size() << " tracklets\n";
    }
    write_all(outputs);
    return kExitSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Evaluate object detectors on video: accuracy, temporal stability, failures"};
    app.name("vdeval");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version()));

    Options o;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Accuracy, stability and failure report");
    auto* stability_cmd = app.add_subcommand("stability", "Temporal stability errors only");
    auto* failures_cmd = app.add_subcommand("failures", "False-negative taxonomy only");
    for (auto* cmd : {evaluate_cmd, stability_cmd, failures_cmd}) {
        add_input_options(cmd, o, true);
        add_metric_options(cmd, o);
    }

    auto* convert_cmd = app.add_subcommand("convert", "Convert VOC annotations to YOLO labels");
    convert_cmd->add_option("--voc", o.gt, "Directory of VOC .xml files")->required();
    convert_cmd->add_option("--out", o.out, "Output directory for YOLO labels")->required();
    convert_cmd->add_option("--classes", o.classes, "Class table; derived from the data if omitted");
    convert_cmd->add_option("--manifest", o.manifest, "Manifest supplying frame sizes");
    convert_cmd->add_option("--filter-policy", o.filter_policy, "reject or clamp")
        ->check(CLI::IsMember({"reject", "clamp"}));

    auto* stats_cmd = app.add_subcommand("stats", "Dataset distribution statistics");
    add_input_options(stats_cmd, o, false);
    stats_cmd->add_option("--grid", o.grid, "Centroid grid size")->check(CLI::PositiveNumber);
    stats_cmd->add_option("--area-bins", o.area_bins, "Area histogram bins")->check(CLI::PositiveNumber);
    stats_cmd->add_option("--format", o.format, "json, csv or all")
        ->check(CLI::IsMember({"json", "csv", "all"}));

    auto* tracklets_cmd = app.add_subcommand("tracklets", "Dump ground-truth tracklets per video");
    add_input_options(tracklets_cmd, o, false);
    tracklets_cmd->add_option("--link-iou", o.link_iou, "IOU needed to link across frames")
        ->check(CLI::Range(0.0, 1.0));
    tracklets_cmd->add_option("--match-iou", o.match_iou, "IOU for attaching detections")
        ->check(CLI::Range(0.0, 1.0));
    tracklets_cmd->add_option("--conf", o.conf, "Confidence threshold or 'auto'");

    std::vector<std::string> argv_storage(args);
    std::vector<char*> argv;
    argv.reserve(argv_storage.size() + 1);
    for (auto& a : argv_storage) argv.push_back(a.data());
    argv.push_back(nullptr);

    try {
        app.parse(static_cast<int>(argv_storage.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitValidation;
    }

    try {
        const RunConfig config = to_config(o);
        if (*evaluate_cmd || *stability_cmd || *failures_cmd) {
            validate(config, true);
            if (*evaluate_cmd) return cmd_evaluate(config, out, err);
            if (*stability_cmd) return cmd_stability(config, out, err);
            return cmd_failures(config, out, err);
        }
        validate(config, false);
        if (*convert_cmd) return cmd_convert(config, out, err);
        if (*stats_cmd) return cmd_stats(config, out, err);
        return cmd_tracklets(config, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace vdeval
