#include "vdeval/matching.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace vdeval {

namespace {

void check_threshold(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ValidationError(std::string(name) + " must lie in [0,1], got " + std::to_string(value));
    }
}

}  // namespace

FrameMatchResult match_frame(std::span<const Detection> detections, const GroundTruthFrame& frame,
                             double match_iou, double conf_threshold) {
    check_threshold(match_iou, "match_iou");
    check_threshold(conf_threshold, "conf_threshold");

    FrameMatchResult result;
    result.video_id = frame.video_id;
    result.frame_index = frame.frame_index;
    result.match_iou = match_iou;
    result.conf_threshold = conf_threshold;

    const auto& objects = frame.objects;
    std::vector<std::size_t> order;
    std::vector<double> best_iou(detections.size(), 0.0);
    for (std::size_t d = 0; d < detections.size(); ++d) {
        const auto& det = detections[d];
        if (det.video_id != frame.video_id || det.frame_index != frame.frame_index) {
            throw ValidationError("detection for " + format_frame_id(det.id()) +
                                  " passed to matcher of frame " + format_frame_id(frame.id()));
        }
        if (det.confidence < conf_threshold) continue;
        for (const auto& obj : objects) {
            if (obj.object_class == det.object_class) {
                best_iou[d] = std::max(best_iou[d], iou(det.box, obj.box));
            }
        }
        order.push_back(d);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (detections[a].confidence != detections[b].confidence) {
            return detections[a].confidence > detections[b].confidence;
        }
        return best_iou[a] > best_iou[b];
    });

    std::vector<bool> claimed(objects.size(), false);
    for (const std::size_t d : order) {
        const auto& det = detections[d];
        std::optional<std::size_t> best;
        double best_value = -1.0;
        for (std::size_t g = 0; g < objects.size(); ++g) {
            if (claimed[g] || objects[g].object_class != det.object_class) continue;
            const double v = iou(det.box, objects[g].box);
            if (v > best_value) {
                best_value = v;
                best = g;
            }
        }
        if (best && best_value >= match_iou && best_value > 0.0) {
            claimed[*best] = true;
            result.true_positives.push_back({d, *best, det, objects[*best], best_value});
        } else {
            result.false_positives.push_back({d, det});
        }
    }
    for (std::size_t g = 0; g < objects.size(); ++g) {
        if (!claimed[g]) result.false_negatives.push_back({g, objects[g]});
    }
    return result;
}

std::vector<FrameMatchResult> match_all(std::span<const Detection> detections,
                                        std::span<const GroundTruthFrame> frames,
                                        double match_iou, double conf_threshold) {
    std::map<FrameId, std::vector<Detection>> by_frame;
    for (const auto& det : detections) by_frame[det.id()].push_back(det);

    std::map<FrameId, const GroundTruthFrame*> gt;
    for (const auto& frame : frames) {
        if (!gt.emplace(frame.id(), &frame).second) {
            throw ValidationError("duplicate ground-truth frame " + format_frame_id(frame.id()));
        }
    }

    std::vector<FrameMatchResult> results;
    results.reserve(gt.size() + by_frame.size());
    auto git = gt.begin();
    auto dit = by_frame.begin();
    static const std::vector<Detection> kNone;
    while (git != gt.end() || dit != by_frame.end()) {
        if (dit == by_frame.end() || (git != gt.end() && git->first < dit->first)) {
            results.push_back(match_frame(kNone, *git->second, match_iou, conf_threshold));
            ++git;
        } else if (git == gt.end() || dit->first < git->first) {
            const GroundTruthFrame empty{dit->first.video_id, dit->first.frame_index, {}};
            results.push_back(match_frame(dit->second, empty, match_iou, conf_threshold));
            ++dit;
        } else {
            results.push_back(match_frame(dit->second, *git->second, match_iou, conf_threshold));
            ++git;
            ++dit;
        }
    }
    return results;
}

}  // namespace vdeval
