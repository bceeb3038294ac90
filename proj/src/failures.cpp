#include "vdeval/failures.hpp"

#include <algorithm>
#include <map>

namespace vdeval {

std::string_view to_string(FailureCategory category) noexcept {
    switch (category) {
        case FailureCategory::EdgeOfFrame: return "edge_of_frame";
        case FailureCategory::Occluded: return "occluded";
        case FailureCategory::Both: return "both";
        case FailureCategory::Other: return "other";
    }
    return "other";
}

bool is_edge_of_frame(const Box& box, double eps) noexcept {
    return std::min(box.x_min, box.y_min) <= eps || box.x_max >= 1.0 - eps ||
           box.y_max >= 1.0 - eps;
}

bool is_occluded(const Box& box, std::span<const Box> others) noexcept {
    for (const auto& other : others) {
        if (iou(box, other) > 0.0) return true;
    }
    return false;
}

FailureCategory categorize(bool edge, bool occluded) noexcept {
    if (edge && occluded) return FailureCategory::Both;
    if (edge) return FailureCategory::EdgeOfFrame;
    if (occluded) return FailureCategory::Occluded;
    return FailureCategory::Other;
}

std::size_t& FailureCounts::operator[](FailureCategory category) noexcept {
    switch (category) {
        case FailureCategory::EdgeOfFrame: return edge_of_frame;
        case FailureCategory::Occluded: return occluded;
        case FailureCategory::Both: return both;
        case FailureCategory::Other: break;
    }
    return other;
}

std::size_t FailureCounts::operator[](FailureCategory category) const noexcept {
    return const_cast<FailureCounts&>(*this)[category];
}

std::array<double, 4> FailureCounts::fractions() const noexcept {
    const std::size_t n = total();
    if (n == 0) return {0.0, 0.0, 0.0, 0.0};
    const double d = static_cast<double>(n);
    return {static_cast<double>(edge_of_frame) / d, static_cast<double>(occluded) / d,
            static_cast<double>(both) / d, static_cast<double>(other) / d};
}

FailureBreakdown classify_false_negatives(std::span<const FrameMatchResult> matches,
                                          std::span<const GroundTruthFrame> frames, double eps) {
    std::map<FrameId, const GroundTruthFrame*> index;
    for (const auto& f : frames) index.emplace(f.id(), &f);

    FailureBreakdown out;
    out.edge_tolerance = eps;
    std::vector<Box> others;
    for (const auto& m : matches) {
        if (m.false_negatives.empty()) continue;
        const auto it = index.find(m.id());
        if (it == index.end()) {
            throw ValidationError("false negatives reported for unknown frame " +
                                  format_frame_id(m.id()));
        }
        const auto& objects = it->second->objects;
        for (const auto& fn : m.false_negatives) {
            if (fn.object_index >= objects.size()) {
                throw ValidationError("false negative refers to missing object " +
                                      std::to_string(fn.object_index) + " in " +
                                      format_frame_id(m.id()));
            }
            others.clear();
            for (std::size_t k = 0; k < objects.size(); ++k) {
                if (k != fn.object_index) others.push_back(objects[k].box);
            }
            FailureRecord rec;
            rec.video_id = m.video_id;
            rec.frame_index = m.frame_index;
            rec.object_index = fn.object_index;
            rec.object_class = fn.object.object_class;
            rec.box = fn.object.box;
            rec.edge = is_edge_of_frame(rec.box, eps);
            rec.occluded = is_occluded(rec.box, others);
            rec.category = categorize(rec.edge, rec.occluded);

            ++out.counts[rec.category];
            ++out.per_video[rec.video_id][rec.category];
            if (rec.edge) ++out.edge_marginal;
            if (rec.occluded) ++out.occluded_marginal;
            out.records.push_back(std::move(rec));
        }
    }
    return out;
}

}  // namespace vdeval
