#include "vdeval/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace vdeval {

std::string_view to_string(ApInterpolation mode) noexcept {
    switch (mode) {
        case ApInterpolation::None: return "none";
        case ApInterpolation::Voc11Point: return "voc11";
        case ApInterpolation::Coco101Point: return "coco101";
    }
    return "none";
}

std::string_view to_string(MeanIouMode mode) noexcept {
    switch (mode) {
        case MeanIouMode::TruePositives: return "true-positives";
        case MeanIouMode::BestPerGroundTruth: return "best-per-ground-truth";
    }
    return "true-positives";
}

PrCurve pr_curve(std::span<const Detection> detections, std::span<const GroundTruthFrame> frames,
                 double match_iou) {
    PrCurve curve;
    curve.match_iou = match_iou;
    for (const auto& f : frames) curve.ground_truth_count += f.objects.size();
    if (curve.ground_truth_count == 0) {
        throw EmptyGroundTruthError("no ground-truth boxes: recall is undefined");
    }

    // Greedy matching visits detections by descending confidence, so the
    // labels assigned with every detection admitted are the same as those at
    // any confidence cut.
    const auto matches = match_all(detections, frames, match_iou, 0.0);
    std::vector<std::pair<double, bool>> ranked;  // (confidence, is_tp)
    ranked.reserve(detections.size());
    for (const auto& m : matches) {
        for (const auto& tp : m.true_positives) ranked.emplace_back(tp.detection.confidence, true);
        for (const auto& fp : m.false_positives) ranked.emplace_back(fp.detection.confidence, false);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    std::size_t tp = 0;
    std::size_t fp = 0;
    const double total = static_cast<double>(curve.ground_truth_count);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        (ranked[i].second ? tp : fp) += 1;
        const bool last_of_group = i + 1 == ranked.size() || ranked[i + 1].first != ranked[i].first;
        if (!last_of_group) continue;
        curve.points.push_back({ranked[i].first,
                                static_cast<double>(tp) / static_cast<double>(tp + fp),
                                static_cast<double>(tp) / total, tp, fp});
    }
    return curve;
}

double average_precision(const PrCurve& curve, ApInterpolation mode) {
    const auto& pts = curve.points;
    if (pts.empty()) return 0.0;
    if (mode == ApInterpolation::None) {
        double ap = 0.0;
        double previous_recall = 0.0;
        for (const auto& p : pts) {
            ap += (p.recall - previous_recall) * p.precision;
            previous_recall = p.recall;
        }
        return ap;
    }

    // Precision envelope: best precision at this recall or any higher one.
    std::vector<double> envelope(pts.size());
    double running = 0.0;
    for (std::size_t i = pts.size(); i-- > 0;) {
        running = std::max(running, pts[i].precision);
        envelope[i] = running;
    }
    const int levels = mode == ApInterpolation::Voc11Point ? 11 : 101;
    double sum = 0.0;
    for (int k = 0; k < levels; ++k) {
        const double r = static_cast<double>(k) / static_cast<double>(levels - 1);
        const auto it = std::find_if(pts.begin(), pts.end(),
                                     [r](const PrPoint& p) { return p.recall >= r; });
        if (it != pts.end()) sum += envelope[static_cast<std::size_t>(it - pts.begin())];
    }
    return sum / static_cast<double>(levels);
}

std::array<double, kIouGridSize> iou_threshold_grid() noexcept {
    std::array<double, kIouGridSize> grid{};
    for (std::size_t k = 0; k < kIouGridSize; ++k) {
        grid[k] = static_cast<double>(50 + 5 * k) / 100.0;
    }
    return grid;
}

ApSuite ap_suite(std::span<const Detection> detections, std::span<const GroundTruthFrame> frames,
                 ApInterpolation mode) {
    ApSuite suite;
    const auto grid = iou_threshold_grid();
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        suite.per_threshold[k] = average_precision(pr_curve(detections, frames, grid[k]), mode);
        sum += suite.per_threshold[k];
    }
    suite.ap50 = suite.per_threshold[0];
    suite.ap75 = suite.per_threshold[5];
    suite.ap_range = sum / static_cast<double>(grid.size());
    return suite;
}

MeanIou mean_iou(std::span<const FrameMatchResult> matches) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& m : matches) {
        for (const auto& tp : m.true_positives) {
            sum += tp.iou;
            ++n;
        }
    }
    if (n == 0) return {0.0, false};
    return {sum / static_cast<double>(n), true};
}

MeanIou mean_best_iou(std::span<const Detection> detections,
                      std::span<const GroundTruthFrame> frames, double conf_threshold) {
    std::map<FrameId, std::vector<const Detection*>> by_frame;
    for (const auto& d : detections) {
        if (d.confidence >= conf_threshold) by_frame[d.id()].push_back(&d);
    }
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& frame : frames) {
        const auto it = by_frame.find(frame.id());
        for (const auto& obj : frame.objects) {
            double best = 0.0;
            if (it != by_frame.end()) {
                for (const Detection* d : it->second) {
                    if (d->object_class == obj.object_class) best = std::max(best, iou(d->box, obj.box));
                }
            }
            sum += best;
            ++n;
        }
    }
    if (n == 0) return {0.0, false};
    return {sum / static_cast<double>(n), true};
}

namespace {

double f1_score(double precision, double recall) {
    const double denom = precision + recall;
    return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

}  // namespace

ThresholdSelection select_confidence_threshold(const PrCurve& curve) {
    if (curve.points.empty()) throw ValidationError("cannot select a threshold from an empty PR curve");
    ThresholdSelection best;
    bool first = true;
    // Points run from high to low confidence, so a strict comparison keeps
    // the higher confidence on ties.
    for (const auto& p : curve.points) {
        const double f1 = f1_score(p.precision, p.recall);
        if (first || f1 > best.f1) {
            best = {p.confidence, f1, p.precision, p.recall, false};
            first = false;
        }
    }
    best.degenerate = best.f1 == 0.0;
    return best;
}

MatchCounts count_matches(std::span<const FrameMatchResult> matches) noexcept {
    MatchCounts c;
    for (const auto& m : matches) {
        c.true_positives += m.true_positives.size();
        c.false_positives += m.false_positives.size();
        c.false_negatives += m.false_negatives.size();
    }
    return c;
}

EvaluationReport evaluate_accuracy(std::span<const Detection> detections,
                                   std::span<const GroundTruthFrame> frames,
                                   const AccuracyConfig& config) {
    EvaluationReport report;
    report.config = config;
    report.ap = ap_suite(detections, frames, config.interpolation);
    report.curve = pr_curve(detections, frames, config.match_iou);

    if (config.conf_threshold) {
        if (!(*config.conf_threshold >= 0.0 && *config.conf_threshold <= 1.0)) {
            throw ValidationError("confidence threshold must lie in [0,1]");
        }
        report.conf_threshold = *config.conf_threshold;
    } else if (report.curve.points.empty()) {
        // No detections at all: nothing to select from.
        report.threshold_auto = true;
        report.conf_threshold = 1.0;
        report.selection = ThresholdSelection{1.0, 0.0, 0.0, 0.0, true};
    } else {
        report.threshold_auto = true;
        report.selection = select_confidence_threshold(report.curve);
        report.conf_threshold = report.selection->confidence;
    }

    const auto matches = match_all(detections, frames, config.match_iou, report.conf_threshold);
    report.counts = count_matches(matches);
    const auto& c = report.counts;
    if (c.true_positives + c.false_positives > 0) {
        report.precision = static_cast<double>(c.true_positives) /
                           static_cast<double>(c.true_positives + c.false_positives);
    }
    if (c.true_positives + c.false_negatives > 0) {
        report.recall = static_cast<double>(c.true_positives) /
                        static_cast<double>(c.true_positives + c.false_negatives);
    }
    report.mean_iou = config.mean_iou_mode == MeanIouMode::TruePositives
                          ? mean_iou(matches)
                          : mean_best_iou(detections, frames, report.conf_threshold);
    return report;
}

}  // namespace vdeval
