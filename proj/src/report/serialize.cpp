#include "vdeval/report.hpp"

#include <cstdio>

namespace vdeval {

using nlohmann::ordered_json;

namespace {

std::string_view to_string(FilterPolicy p) { return p == FilterPolicy::Reject ? "reject" : "clamp"; }

std::string_view to_string(ErrorPolicy p) {
    return p == ErrorPolicy::FailFast ? "fail-fast" : "skip-and-log";
}

ordered_json box_json(const Box& b) { return ordered_json::array({b.x_min, b.y_min, b.x_max, b.y_max}); }

ordered_json metric_json(const MetricMean& m) {
    ordered_json j;
    j["value"] = m.defined() ? ordered_json(m.value) : ordered_json(nullptr);
    j["defined"] = m.defined();
    j["tracklets"] = m.count;
    return j;
}

ordered_json counts_json(const FailureCounts& c) {
    ordered_json j;
    const auto fr = c.fractions();
    j["edge_of_frame"] = c.edge_of_frame;
    j["occluded"] = c.occluded;
    j["both"] = c.both;
    j["other"] = c.other;
    j["total"] = c.total();
    j["fractions"] = {{"edge_of_frame", fr[0]}, {"occluded", fr[1]}, {"both", fr[2]}, {"other", fr[3]}};
    return j;
}

std::string cell(const std::optional<double>& v) { return v ? format_fixed(*v, 9) : std::string{}; }

}  // namespace

std::string format_fixed(double value, int decimals) {
    char buf[64];
    const int n = std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return std::string(buf, static_cast<std::size_t>(n));
}

ordered_json config_stamp(const RunConfig& config) {
    ordered_json j;
    j["match_iou"] = config.match_iou;
    j["link_iou"] = config.link_iou;
    j["conf_threshold"] = config.conf_threshold ? ordered_json(*config.conf_threshold)
                                                : ordered_json("auto");
    j["filter_policy"] = to_string(config.filter_policy);
    j["detection_error_policy"] = to_string(config.detection_policy);

    ordered_json ap;
    ap["definition"] = "sum over distinct confidences of recall increase times precision";
    ap["interpolation"] = to_string(config.interpolation);
    ap["iou_grid"] = iou_threshold_grid();
    ap["iou_comparison"] = ">=";
    ap["auto_threshold"] = "max F1, ties to higher confidence";
    j["average_precision"] = ap;

    j["matching"] = {{"protocol", "greedy by descending confidence, then best IOU, then input order"},
                     {"class_aware", true},
                     {"duplicates", "false positive"}};
    j["mean_iou"] = to_string(config.mean_iou_mode);
    j["tracklets"] = {{"link_iou", config.link_iou},
                      {"linking", "greedy one-to-one by descending IOU, consecutive frames only"},
                      {"tie_break", "lower index in earlier frame, then in later frame"},
                      {"class_aware", true}};
    j["stability"] = {{"sigma", "population"},
                      {"min_matched_detections", 2},
                      {"fragmentation_min_length", 2},
                      {"fragmentation_initial_status", "not a flip"}};
    j["failures"] = {{"edge_tolerance", config.edge_tolerance},
                     {"occlusion", "IOU > 0 with another ground-truth box"},
                     {"categories", "exclusive with marginal counts"}};
    j["binning"] = {{"centroid_grid", config.centroid_grid}, {"area_bins", config.area_bins}};
    return j;
}

ordered_json to_json(const EvaluationReport& r) {
    ordered_json j;
    j["ap50"] = r.ap.ap50;
    j["ap75"] = r.ap.ap75;
    j["ap_range"] = r.ap.ap_range;
    j["ap_per_iou"] = r.ap.per_threshold;
    j["mean_iou"] = r.mean_iou.value;
    j["mean_iou_defined"] = r.mean_iou.defined;
    j["conf_threshold"] = r.conf_threshold;
    j["threshold_mode"] = r.threshold_auto ? "auto" : "fixed";
    if (r.selection) {
        j["selection"] = {{"f1", r.selection->f1}, {"degenerate", r.selection->degenerate}};
    }
    j["precision"] = r.precision;
    j["recall"] = r.recall;
    j["true_positives"] = r.counts.true_positives;
    j["false_positives"] = r.counts.false_positives;
    j["false_negatives"] = r.counts.false_negatives;
    j["ground_truth_boxes"] = r.curve.ground_truth_count;
    j["pr_points"] = r.curve.points.size();
    return j;
}

ordered_json to_json(const StabilityReport& r) {
    ordered_json j;
    j["translation_error"] = metric_json(r.translation);
    j["scale_aspect_error"] = metric_json(r.scale_aspect);
    j["fragmentation_error"] = metric_json(r.fragmentation);
    j["excluded"] = {{"fewer_than_two_matches", r.excluded_few_matches},
                     {"single_frame", r.excluded_single_frame}};
    j["tracklet_count"] = r.tracklets.size();
    return j;
}

ordered_json to_json(const FailureBreakdown& b) {
    ordered_json j;
    j["exclusive"] = counts_json(b.counts);
    j["marginal"] = {{"edge_of_frame", b.edge_marginal}, {"occluded", b.occluded_marginal}};
    ordered_json per_video = ordered_json::object();
    for (const auto& [video, counts] : b.per_video) per_video[video] = counts_json(counts);
    j["per_video"] = per_video;
    j["edge_tolerance"] = b.edge_tolerance;
    return j;
}

ordered_json to_json(const RunReport& r) {
    ordered_json j;
    j["tool"] = {{"name", "vdeval"}, {"version", tool_version()}};
    j["generated_at"] = r.generated_at;
    ordered_json inputs;
    inputs["ground_truth"] = r.config.gt_path.generic_string();
    inputs["detections"] = r.config.detections_path.generic_string();
    inputs["manifest"] = r.config.manifest_path ? ordered_json(r.config.manifest_path->generic_string())
                                                : ordered_json(nullptr);
    inputs["sha256"] = r.digests;
    j["inputs"] = inputs;
    j["config"] = config_stamp(r.config);
    j["dataset"] = {{"videos", r.video_count},
                    {"frames", r.frame_count},
                    {"boxes", r.box_count},
                    {"detections", r.detection_count},
                    {"tracklets", r.tracklets.size()}};
    j["accuracy"] = to_json(r.accuracy);
    j["stability"] = to_json(r.stability);
    j["failures"] = to_json(r.failures);
    ordered_json diags = ordered_json::array();
    for (const auto& d : r.diagnostics) diags.push_back({{"location", d.location}, {"message", d.message}});
    j["diagnostics"] = diags;
    return j;
}

ordered_json to_json(const SplitSummary& s) {
    auto rows = [](const std::vector<TagRow>& in) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : in) {
            arr.push_back({{"tag", r.tag},
                           {"videos", r.videos},
                           {"frames", r.frames},
                           {"boxes", r.boxes},
                           {"video_percent", r.video_percent},
                           {"frame_percent", r.frame_percent},
                           {"box_percent", r.box_percent}});
        }
        return arr;
    };
    return {{"by_split", rows(s.by_split)}, {"by_environment", rows(s.by_environment)}};
}

ordered_json tracklets_to_json(std::string_view video_id, std::span<const Tracklet> tracklets,
                               double link_iou) {
    ordered_json j;
    j["video_id"] = video_id;
    j["link_iou"] = link_iou;
    ordered_json list = ordered_json::array();
    for (const auto& t : tracklets) {
        ordered_json tj;
        tj["tracklet_id"] = t.id;
        tj["class"] = t.object_class;
        tj["start_frame"] = t.start_frame();
        tj["length"] = t.length();
        tj["matched_detections"] = t.matched_count();
        ordered_json frames = ordered_json::array();
        for (const auto& f : t.frames) {
            frames.push_back({{"frame_index", f.frame_index},
                              {"object_index", f.object_index},
                              {"box", box_json(f.gt_box)},
                              {"detected", f.detected()}});
        }
        tj["frames"] = frames;
        list.push_back(std::move(tj));
    }
    j["tracklets"] = list;
    return j;
}

std::string pr_curve_csv(const PrCurve& curve) {
    std::string out = "confidence,precision,recall,true_positives,false_positives\n";
    for (const auto& p : curve.points) {
        out += format_fixed(p.confidence, 9) + ',' + format_fixed(p.precision, 9) + ',' +
               format_fixed(p.recall, 9) + ',' + std::to_string(p.true_positives) + ',' +
               std::to_string(p.false_positives) + '\n';
    }
    return out;
}

std::string stability_csv(const StabilityReport& report) {
    std::string out = "video_id,tracklet_id,l_t,matched_count,e_c,e_s,e_r,e_sr,f_t,fragmentation\n";
    for (const auto& t : report.tracklets) {
        const auto& sa = t.scale_aspect;
        out += t.video_id + ',' + std::to_string(t.id) + ',' + std::to_string(t.length) + ',' +
               std::to_string(t.matched_count) + ',' + cell(t.translation) + ',' +
               cell(sa ? std::optional(sa->scale) : std::nullopt) + ',' +
               cell(sa ? std::optional(sa->aspect) : std::nullopt) + ',' +
               cell(sa ? std::optional(sa->combined) : std::nullopt) + ',' + std::to_string(t.flips) +
               ',' + cell(t.fragmentation) + '\n';
    }
    return out;
}

std::string failures_csv(const FailureBreakdown& b) {
    std::string out = "scope,edge_of_frame,occluded,both,other,total\n";
    auto row = [&out](const std::string& scope, const FailureCounts& c) {
        out += scope + ',' + std::to_string(c.edge_of_frame) + ',' + std::to_string(c.occluded) + ',' +
               std::to_string(c.both) + ',' + std::to_string(c.other) + ',' +
               std::to_string(c.total()) + '\n';
    };
    row("all", b.counts);
    for (const auto& [video, c] : b.per_video) row(video, c);
    return out;
}

std::string failure_records_csv(const FailureBreakdown& b) {
    std::string out = "video_id,frame_index,object_index,class,x_min,y_min,x_max,y_max,edge,occluded,category\n";
    for (const auto& r : b.records) {
        out += r.video_id + ',' + std::to_string(r.frame_index) + ',' + std::to_string(r.object_index) +
               ',' + r.object_class + ',' + format_fixed(r.box.x_min, 6) + ',' +
               format_fixed(r.box.y_min, 6) + ',' + format_fixed(r.box.x_max, 6) + ',' +
               format_fixed(r.box.y_max, 6) + ',' + (r.edge ? "1" : "0") + ',' +
               (r.occluded ? "1" : "0") + ',' + std::string(to_string(r.category)) + '\n';
    }
    return out;
}

std::string centroid_csv(const Histogram2D& h) {
    std::string out = "x_bin,y_bin,x_low,y_low,count\n";
    const double step = 1.0 / static_cast<double>(h.grid());
    for (int y = 0; y < h.grid(); ++y) {
        for (int x = 0; x < h.grid(); ++x) {
            out += std::to_string(x) + ',' + std::to_string(y) + ',' + format_fixed(x * step, 6) + ',' +
                   format_fixed(y * step, 6) + ',' + std::to_string(h.at(x, y)) + '\n';
        }
    }
    return out;
}

std::string area_csv(const Histogram1D& h) {
    std::string out = "low,high,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        out += format_fixed(h.edges[i], 6) + ',' + format_fixed(h.edges[i + 1], 6) + ',' +
               std::to_string(h.counts[i]) + '\n';
    }
    return out;
}

}  // namespace vdeval
