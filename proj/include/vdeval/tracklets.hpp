#pragma once

#include "vdeval/ingest.hpp"
#include "vdeval/matching.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vdeval {

inline constexpr double kDefaultLinkIou = 0.5;

struct TrackletFrame {
    std::uint64_t frame_index = 0;
    std::size_t object_index = 0;  // position in the frame's object list
    Box gt_box;
    std::optional<Detection> detection;

    bool detected() const noexcept { return detection.has_value(); }
};

/// Chain of ground-truth boxes of one object over consecutive frames.
struct Tracklet {
    std::size_t id = 0;
    std::string video_id;
    std::string object_class;
    std::vector<TrackletFrame> frames;

    std::uint64_t start_frame() const { return frames.front().frame_index; }
    std::size_t length() const noexcept { return frames.size(); }
    std::size_t matched_count() const noexcept;
};

/// Links the ground truth of one video frame to frame. Only frames whose
/// indices differ by one are linked; candidate links are same-class pairs
/// with positive IOU >= link_iou, accepted greedily by descending IOU (ties: lower
/// index in the earlier frame, then in the later frame). Tracklet ids are
/// assigned in order of (start frame, object index).
///
/// Throws ValidationError for unsorted or duplicate frame indices, or for
/// frames of more than one video.
std::vector<Tracklet> build_tracklets(std::span<const GroundTruthFrame> video_frames,
                                      double link_iou = kDefaultLinkIou);

/// Builds tracklets for every video in `frames` (any order). Videos are
/// processed concurrently; the output is ordered by video id.
std::vector<Tracklet> build_all_tracklets(std::span<const GroundTruthFrame> frames,
                                          double link_iou = kDefaultLinkIou);

/// Stores each true-positive detection on the tracklet frame holding its
/// ground-truth box; all other slots are cleared. Throws ValidationError if
/// a match references a box that no tracklet holds.
void attach_detections(std::span<Tracklet> tracklets, std::span<const FrameMatchResult> matches);

}  // namespace vdeval
