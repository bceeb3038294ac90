#pragma once

#include "vdeval/accuracy.hpp"
#include "vdeval/dataset_stats.hpp"
#include "vdeval/failures.hpp"
#include "vdeval/ingest.hpp"
#include "vdeval/stability.hpp"
#include "vdeval/tracklets.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vdeval {

std::string_view tool_version() noexcept;

enum class OutputFormat { Json, Csv, All };

struct RunConfig {
    std::filesystem::path gt_path;  // directory of VOC .xml / YOLO .txt files, or one file
    std::filesystem::path detections_path;
    std::optional<std::filesystem::path> manifest_path;
    std::optional<std::filesystem::path> classes_path;
    std::filesystem::path out_dir = ".";

    double match_iou = kDefaultMatchIou;
    double link_iou = kDefaultLinkIou;
    std::optional<double> conf_threshold;  // nullopt = auto
    FilterPolicy filter_policy = FilterPolicy::Reject;
    ErrorPolicy detection_policy = ErrorPolicy::FailFast;
    ApInterpolation interpolation = ApInterpolation::None;
    MeanIouMode mean_iou_mode = MeanIouMode::TruePositives;
    double edge_tolerance = kDefaultEdgeTolerance;
    int centroid_grid = kDefaultCentroidGrid;
    int area_bins = kDefaultAreaBins;
    OutputFormat format = OutputFormat::All;
};

/// Throws ValidationError for thresholds outside [0,1] or empty paths.
void validate(const RunConfig& config, bool needs_detections);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);
std::string sha256_hex(std::string_view data);

/// Ground truth loaded from disk, filtered, sorted by frame id.
struct GroundTruthSet {
    std::vector<GroundTruthFrame> frames;
    std::vector<VideoManifest> manifests;
    std::vector<std::string> class_names;
    std::vector<Diagnostic> diagnostics;
    std::map<std::string, std::string> digests;  // input name -> sha256
    std::map<FrameId, std::filesystem::path> sources;
};

/// Reads every .xml (VOC) and .txt (YOLO) file under config.gt_path in
/// path order, plus the manifest and class table when configured, then
/// applies filter_boxes with the configured policy. VOC files without a
/// <size> fall back to the manifest frame size of their video.
GroundTruthSet load_ground_truth(const RunConfig& config);

struct DetectionSet {
    std::vector<Detection> detections;
    std::vector<Diagnostic> diagnostics;
    std::string digest;
};

DetectionSet load_detections(const RunConfig& config);

std::size_t box_count(std::span<const GroundTruthFrame> frames) noexcept;

struct RunReport {
    EvaluationReport accuracy;
    StabilityReport stability;
    FailureBreakdown failures;
    std::vector<Tracklet> tracklets;
    RunConfig config;
    std::map<std::string, std::string> digests;
    std::vector<Diagnostic> diagnostics;
    std::size_t video_count = 0;
    std::size_t frame_count = 0;
    std::size_t box_count = 0;
    std::size_t detection_count = 0;
    std::string generated_at;
};

/// Full pipeline on in-memory inputs: matching at the operating threshold,
/// tracklets, accuracy, stability and failure analysis. Throws
/// EmptyGroundTruthError when there are no ground-truth boxes.
RunReport evaluate(std::span<const GroundTruthFrame> frames, std::span<const Detection> detections,
                   const RunConfig& config);

/// Loads inputs from disk and runs evaluate().
RunReport evaluate(const RunConfig& config);

// ---------------------------------------------------------------------------
// Serialization

nlohmann::ordered_json config_stamp(const RunConfig& config);
nlohmann::ordered_json to_json(const EvaluationReport& report);
nlohmann::ordered_json to_json(const StabilityReport& report);
nlohmann::ordered_json to_json(const FailureBreakdown& breakdown);
nlohmann::ordered_json to_json(const RunReport& report);
nlohmann::ordered_json to_json(const SplitSummary& summary);
/// Debug dump of one video's tracklets.
nlohmann::ordered_json tracklets_to_json(std::string_view video_id,
                                         std::span<const Tracklet> tracklets, double link_iou);

std::string pr_curve_csv(const PrCurve& curve);
std::string stability_csv(const StabilityReport& report);
std::string failures_csv(const FailureBreakdown& breakdown);
std::string failure_records_csv(const FailureBreakdown& breakdown);
std::string centroid_csv(const Histogram2D& histogram);
std::string area_csv(const Histogram1D& histogram);

/// Formats with a fixed number of decimals, independent of locale.
std::string format_fixed(double value, int decimals);

}  // namespace vdeval
