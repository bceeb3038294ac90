#pragma once

#include "vdeval/ingest.hpp"
#include "vdeval/matching.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vdeval {

inline constexpr double kDefaultEdgeTolerance = 1e-6;

enum class FailureCategory { EdgeOfFrame, Occluded, Both, Other };

std::string_view to_string(FailureCategory category) noexcept;

/// True when any side of the box lies within `eps` of the frame border.
bool is_edge_of_frame(const Box& box, double eps = kDefaultEdgeTolerance) noexcept;

/// True when the box has positive IOU with any of `others`, which must not
/// contain the box itself.
bool is_occluded(const Box& box, std::span<const Box> others) noexcept;

FailureCategory categorize(bool edge, bool occluded) noexcept;

struct FailureCounts {
    std::size_t edge_of_frame = 0;
    std::size_t occluded = 0;
    std::size_t both = 0;
    std::size_t other = 0;

    std::size_t total() const noexcept { return edge_of_frame + occluded + both + other; }
    std::size_t& operator[](FailureCategory category) noexcept;
    std::size_t operator[](FailureCategory category) const noexcept;
    /// Fractions in category order; all zero when total() == 0.
    std::array<double, 4> fractions() const noexcept;
};

struct FailureRecord {
    std::string video_id;
    std::uint64_t frame_index = 0;
    std::size_t object_index = 0;
    std::string object_class;
    Box box;
    bool edge = false;
    bool occluded = false;
    FailureCategory category = FailureCategory::Other;
};

struct FailureBreakdown {
    FailureCounts counts;             // exclusive categories
    std::size_t edge_marginal = 0;      // edge, regardless of occlusion
    std::size_t occluded_marginal = 0;  // occluded, regardless of edge
    std::map<std::string, FailureCounts> per_video;
    std::vector<FailureRecord> records;
    double edge_tolerance = kDefaultEdgeTolerance;
};

/// Labels every false negative. Occlusion is checked against all other
/// ground-truth boxes of the same frame. Throws ValidationError if a match
/// refers to a frame or object that `frames` does not contain.
FailureBreakdown classify_false_negatives(std::span<const FrameMatchResult> matches,
                                          std::span<const GroundTruthFrame> frames,
                                          double eps = kDefaultEdgeTolerance);

}  // namespace vdeval
