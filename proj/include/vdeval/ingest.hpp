#pragma once

#include "vdeval/error.hpp"
#include "vdeval/geometry.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vdeval {

/// Class labels are stored trimmed and lower-cased so that "Diver " and
/// "diver" compare equal.
std::string canonical_class(std::string_view label);

struct FrameId {
    std::string video_id;
    std::uint64_t frame_index = 0;

    friend auto operator<=>(const FrameId&, const FrameId&) = default;
    friend bool operator==(const FrameId&, const FrameId&) = default;
};

/// Splits a file stem of the form `<video_id>_<frame_index>` at the last
/// underscore. The index may be zero-padded.
FrameId parse_frame_id(std::string_view stem);

/// Formats a frame id back into `<video_id>_<frame_index>` with the index
/// zero-padded to `width` digits.
std::string format_frame_id(const FrameId& id, int width = 6);

struct GroundTruthObject {
    std::string object_class;
    Box box;

    friend bool operator==(const GroundTruthObject&, const GroundTruthObject&) = default;
};

struct GroundTruthFrame {
    std::string video_id;
    std::uint64_t frame_index = 0;
    std::vector<GroundTruthObject> objects;

    FrameId id() const { return {video_id, frame_index}; }

    friend bool operator==(const GroundTruthFrame&, const GroundTruthFrame&) = default;
};

struct Detection {
    std::string video_id;
    std::uint64_t frame_index = 0;
    std::string object_class;
    double confidence = 0.0;
    Box box;

    FrameId id() const { return {video_id, frame_index}; }

    friend bool operator==(const Detection&, const Detection&) = default;
};

inline constexpr double kDefaultFps = 20.0;

struct VideoManifest {
    std::string video_id;
    std::uint64_t frame_count = 1;
    FrameSize frame_size;
    double fps = kDefaultFps;
    std::optional<std::string> environment_tag;
    std::optional<std::string> split_tag;

    friend bool operator==(const VideoManifest&, const VideoManifest&) = default;
};

enum class FilterPolicy { Reject, Clamp };
enum class ErrorPolicy { FailFast, SkipAndLog };

// ---------------------------------------------------------------------------
// Pascal VOC

/// Parses one VOC annotation document. Boxes are normalized by the
/// document's <size> element, or by `size_fallback` when the document has
/// none. The frame identity comes from `identity` when given, otherwise
/// from the stem of the <filename> element.
///
/// Out-of-range boxes are kept as-is for filter_boxes to handle; only
/// zero-width or zero-height rectangles are rejected here.
GroundTruthFrame parse_voc(std::string_view document,
                           std::optional<FrameSize> size_fallback = std::nullopt,
                           std::optional<FrameId> identity = std::nullopt);

// ---------------------------------------------------------------------------
// YOLO labels: one `class_idx cx cy w h` line per object, normalized.

/// An empty class table maps index i to the label "i".
GroundTruthFrame parse_yolo_labels(std::string_view text, const FrameId& identity,
                                   std::span<const std::string> class_names = {});

/// Emits six-decimal fixed-point lines. Throws ValidationError if an object
/// class has no index in `class_names`.
std::string write_yolo_labels(const GroundTruthFrame& frame,
                              std::span<const std::string> class_names = {});

/// Reads a class table, one name per line; blank lines are ignored.
std::vector<std::string> parse_class_names(std::string_view text);

// ---------------------------------------------------------------------------
// Detector output: JSON lines with keys video_id, frame_index, class,
// confidence and box ([x_min, y_min, x_max, y_max], normalized).

struct DetectionParseResult {
    std::vector<Detection> detections;
    std::vector<Diagnostic> diagnostics;
};

DetectionParseResult parse_detections(std::string_view jsonl,
                                      ErrorPolicy policy = ErrorPolicy::FailFast);

std::string write_detection_line(const Detection& detection);

// ---------------------------------------------------------------------------

struct FilterResult {
    std::vector<GroundTruthFrame> frames;
    std::vector<Diagnostic> diagnostics;
};

/// Enforces Box validity on every object. Reject drops offending objects;
/// Clamp clips into [0,1] and drops the object only if the result is
/// degenerate. Every change is reported.
FilterResult filter_boxes(std::vector<GroundTruthFrame> frames,
                          FilterPolicy policy = FilterPolicy::Reject);

// ---------------------------------------------------------------------------
// Dataset manifest: {"videos": [{"video_id", "frame_count", "width", "height",
// "fps"?, "environment"?, "split"?}, ...]}

std::vector<VideoManifest> parse_manifest(std::string_view json_text);

std::string write_manifest(std::span<const VideoManifest> manifests);

}  // namespace vdeval
