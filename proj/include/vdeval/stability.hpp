#pragma once

#include "vdeval/tracklets.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace vdeval {

/// Population standard deviation (divides by n). Zero for n < 2.
double population_stddev(std::span<const double> values) noexcept;

/// e_c: stddev of the normalized x-center offsets between matched
/// detections and ground truth plus the same for y. nullopt when the
/// tracklet has fewer than two matched detections.
std::optional<double> translation_error(const Tracklet& tracklet);

struct ScaleAspectError {
    double scale = 0.0;     // stddev of sqrt(detection area / gt area)
    double aspect = 0.0;    // stddev of detection aspect / gt aspect
    double combined = 0.0;  // scale + aspect
};

/// nullopt when the tracklet has fewer than two matched detections.
std::optional<ScaleAspectError> scale_aspect_error(const Tracklet& tracklet);

/// Number of adjacent frames whose detected status differs.
std::size_t status_flips(const Tracklet& tracklet) noexcept;

/// flips / (length - 1); nullopt for single-frame tracklets.
std::optional<double> fragmentation_ratio(const Tracklet& tracklet) noexcept;

/// Mean of a per-tracklet quantity over the tracklets it is defined for.
struct MetricMean {
    double value = 0.0;
    std::size_t count = 0;

    bool defined() const noexcept { return count > 0; }
};

/// Mean of fragmentation_ratio over tracklets of length >= 2.
MetricMean fragmentation_error(std::span<const Tracklet> tracklets);

struct TrackletStability {
    std::size_t id = 0;
    std::string video_id;
    std::size_t length = 0;
    std::size_t matched_count = 0;
    std::optional<double> translation;
    std::optional<ScaleAspectError> scale_aspect;
    std::size_t flips = 0;
    std::optional<double> fragmentation;
};

struct StabilityReport {
    MetricMean translation;
    MetricMean scale_aspect;
    MetricMean fragmentation;
    std::size_t excluded_few_matches = 0;  // < 2 matched detections
    std::size_t excluded_single_frame = 0;  // length 1
    std::vector<TrackletStability> tracklets;
};

/// Aggregates the three errors over tracklets that already carry their
/// matched detections.
StabilityReport stability_report(std::span<const Tracklet> tracklets);

}  // namespace vdeval
