#pragma once

#include "vdeval/ingest.hpp"
#include "vdeval/matching.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace vdeval {

/// Cumulative precision/recall once every detection with confidence >=
/// `confidence` is accepted.
struct PrPoint {
    double confidence = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
};

/// One point per distinct confidence value, in descending confidence order.
struct PrCurve {
    std::vector<PrPoint> points;
    std::size_t ground_truth_count = 0;
    double match_iou = kDefaultMatchIou;
};

/// Ranks all detections by confidence and matches them frame by frame.
/// Throws EmptyGroundTruthError when there are no ground-truth boxes.
PrCurve pr_curve(std::span<const Detection> detections, std::span<const GroundTruthFrame> frames,
                 double match_iou);

enum class ApInterpolation { None, Voc11Point, Coco101Point };

std::string_view to_string(ApInterpolation mode) noexcept;

/// With ApInterpolation::None: sum over points of (recall increase) *
/// precision, starting from recall 0. The interpolated variants take the
/// running maximum precision to the right and sample it at 11 or 101
/// recall levels.
double average_precision(const PrCurve& curve, ApInterpolation mode = ApInterpolation::None);

inline constexpr std::size_t kIouGridSize = 10;

/// 0.50, 0.55, ..., 0.95.
std::array<double, kIouGridSize> iou_threshold_grid() noexcept;

struct ApSuite {
    double ap50 = 0.0;
    double ap75 = 0.0;
    double ap_range = 0.0;  // mean over iou_threshold_grid()
    std::array<double, kIouGridSize> per_threshold{};
};

ApSuite ap_suite(std::span<const Detection> detections, std::span<const GroundTruthFrame> frames,
                 ApInterpolation mode = ApInterpolation::None);

struct MeanIou {
    double value = 0.0;
    bool defined = false;
};

/// Mean IOU over the true positives of the given matches; undefined (0)
/// when there are none.
MeanIou mean_iou(std::span<const FrameMatchResult> matches);

/// Alternative reading: for every ground-truth box, the best IOU with any
/// same-class detection at or above the threshold (0 if none), averaged
/// over all ground-truth boxes.
MeanIou mean_best_iou(std::span<const Detection> detections,
                      std::span<const GroundTruthFrame> frames, double conf_threshold);

struct ThresholdSelection {
    double confidence = 0.0;
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    bool degenerate = false;  // every point has F1 == 0
};

/// Picks the point of maximal F1; ties go to the higher confidence.
/// Throws ValidationError for an empty curve.
ThresholdSelection select_confidence_threshold(const PrCurve& curve);

enum class MeanIouMode { TruePositives, BestPerGroundTruth };

std::string_view to_string(MeanIouMode mode) noexcept;

struct AccuracyConfig {
    double match_iou = kDefaultMatchIou;
    std::optional<double> conf_threshold;  // nullopt: choose by max F1
    ApInterpolation interpolation = ApInterpolation::None;
    MeanIouMode mean_iou_mode = MeanIouMode::TruePositives;
};

struct MatchCounts {
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
};

struct EvaluationReport {
    ApSuite ap;
    MeanIou mean_iou;
    double conf_threshold = 0.0;
    bool threshold_auto = false;
    std::optional<ThresholdSelection> selection;
    double precision = 0.0;
    double recall = 0.0;
    MatchCounts counts;
    PrCurve curve;  // at AccuracyConfig::match_iou
    AccuracyConfig config;
};

MatchCounts count_matches(std::span<const FrameMatchResult> matches) noexcept;

/// Computes the AP suite, resolves the operating threshold (fixed or max
/// F1 on the curve at config.match_iou) and reports thresholded precision,
/// recall and mean IOU at that threshold.
EvaluationReport evaluate_accuracy(std::span<const Detection> detections,
                                   std::span<const GroundTruthFrame> frames,
                                   const AccuracyConfig& config = {});

}  // namespace vdeval
