#pragma once

#include "vdeval/ingest.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace vdeval {

inline constexpr double kDefaultMatchIou = 0.5;

struct MatchedPair {
    std::size_t detection_index = 0;  // into the detections passed to match_frame
    std::size_t object_index = 0;     // into GroundTruthFrame::objects
    Detection detection;
    GroundTruthObject object;
    double iou = 0.0;
};

struct UnmatchedDetection {
    std::size_t detection_index = 0;
    Detection detection;
};

struct UnmatchedObject {
    std::size_t object_index = 0;
    GroundTruthObject object;
};

/// Outcome of assigning one frame's detections to its ground truth.
/// Detections under the confidence threshold appear in none of the lists.
struct FrameMatchResult {
    std::string video_id;
    std::uint64_t frame_index = 0;
    double match_iou = kDefaultMatchIou;
    double conf_threshold = 0.0;
    std::vector<MatchedPair> true_positives;
    std::vector<UnmatchedDetection> false_positives;
    std::vector<UnmatchedObject> false_negatives;

    FrameId id() const { return {video_id, frame_index}; }
};

/// Greedy confidence-ordered assignment. Detections are visited by
/// descending confidence, then by descending best same-class IOU, then by
/// input order; each claims the unclaimed same-class object of highest IOU
/// (lowest index on ties) when that IOU is >= match_iou.
///
/// Throws ValidationError when a detection belongs to another frame or a
/// threshold lies outside [0,1].
FrameMatchResult match_frame(std::span<const Detection> detections, const GroundTruthFrame& frame,
                             double match_iou, double conf_threshold);

/// Matches every frame. Detections on frames absent from `frames` are
/// matched against an empty frame. The result is sorted by frame id.
std::vector<FrameMatchResult> match_all(std::span<const Detection> detections,
                                        std::span<const GroundTruthFrame> frames,
                                        double match_iou, double conf_threshold);

}  // namespace vdeval
