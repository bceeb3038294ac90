#include "vdeval/stability.hpp"

#include <cmath>
#include <numeric>

namespace vdeval {

double population_stddev(std::span<const double> values) noexcept {
    if (values.size() < 2) return 0.0;
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / n);
}

std::optional<double> translation_error(const Tracklet& tracklet) {
    std::vector<double> dx;
    std::vector<double> dy;
    for (const auto& f : tracklet.frames) {
        if (!f.detection) continue;
        const Point d = center(f.detection->box);
        const Point g = center(f.gt_box);
        dx.push_back(d.x - g.x);
        dy.push_back(d.y - g.y);
    }
    if (dx.size() < 2) return std::nullopt;
    return population_stddev(dx) + population_stddev(dy);
}

std::optional<ScaleAspectError> scale_aspect_error(const Tracklet& tracklet) {
    std::vector<double> scale;
    std::vector<double> aspect;
    for (const auto& f : tracklet.frames) {
        if (!f.detection) continue;
        const Box& d = f.detection->box;
        const Box& g = f.gt_box;
        scale.push_back(std::sqrt((d.width() * d.height()) / (g.width() * g.height())));
        aspect.push_back((d.width() / d.height()) / (g.width() / g.height()));
    }
    if (scale.size() < 2) return std::nullopt;
    ScaleAspectError e;
    e.scale = population_stddev(scale);
    e.aspect = population_stddev(aspect);
    e.combined = e.scale + e.aspect;
    return e;
}

std::size_t status_flips(const Tracklet& tracklet) noexcept {
    std::size_t flips = 0;
    for (std::size_t i = 1; i < tracklet.frames.size(); ++i) {
        if (tracklet.frames[i].detected() != tracklet.frames[i - 1].detected()) ++flips;
    }
    return flips;
}

std::optional<double> fragmentation_ratio(const Tracklet& tracklet) noexcept {
    if (tracklet.length() < 2) return std::nullopt;
    return static_cast<double>(status_flips(tracklet)) /
           static_cast<double>(tracklet.length() - 1);
}

MetricMean fragmentation_error(std::span<const Tracklet> tracklets) {
    MetricMean m;
    double sum = 0.0;
    for (const auto& t : tracklets) {
        if (const auto r = fragmentation_ratio(t)) {
            sum += *r;
            ++m.count;
        }
    }
    if (m.count > 0) m.value = sum / static_cast<double>(m.count);
    return m;
}

StabilityReport stability_report(std::span<const Tracklet> tracklets) {
    StabilityReport report;
    double translation_sum = 0.0;
    double scale_sum = 0.0;
    double fragment_sum = 0.0;
    report.tracklets.reserve(tracklets.size());
    for (const auto& t : tracklets) {
        TrackletStability row;
        row.id = t.id;
        row.video_id = t.video_id;
        row.length = t.length();
        row.matched_count = t.matched_count();
        row.translation = translation_error(t);
        row.scale_aspect = scale_aspect_error(t);
        row.flips = status_flips(t);
        row.fragmentation = fragmentation_ratio(t);

        if (row.translation) {
            translation_sum += *row.translation;
            ++report.translation.count;
        }
        if (row.scale_aspect) {
            scale_sum += row.scale_aspect->combined;
            ++report.scale_aspect.count;
        }
        if (!row.translation) ++report.excluded_few_matches;
        if (row.fragmentation) {
            fragment_sum += *row.fragmentation;
            ++report.fragmentation.count;
        } else {
            ++report.excluded_single_frame;
        }
        report.tracklets.push_back(std::move(row));
    }
    auto mean = [](double sum, std::size_t n) { return n > 0 ? sum / static_cast<double>(n) : 0.0; };
    report.translation.value = mean(translation_sum, report.translation.count);
    report.scale_aspect.value = mean(scale_sum, report.scale_aspect.count);
    report.fragmentation.value = mean(fragment_sum, report.fragmentation.count);
    return report;
}

}  // namespace vdeval
