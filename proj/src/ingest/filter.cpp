#include "vdeval/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vdeval {

namespace {

std::string describe(const Box& b) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << b.x_min << ", " << b.y_min << ", " << b.x_max << ", " << b.y_max << ')';
    return os.str();
}

double clip(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

FilterResult filter_boxes(std::vector<GroundTruthFrame> frames, FilterPolicy policy) {
    FilterResult result;
    for (auto& frame : frames) {
        std::vector<GroundTruthObject> kept;
        kept.reserve(frame.objects.size());
        for (std::size_t i = 0; i < frame.objects.size(); ++i) {
            auto& obj = frame.objects[i];
            if (is_valid(obj.box)) {
                kept.push_back(std::move(obj));
                continue;
            }
            const std::string where = format_frame_id(frame.id()) + " object " + std::to_string(i);
            const bool finite = std::isfinite(obj.box.x_min) && std::isfinite(obj.box.y_min) &&
                                std::isfinite(obj.box.x_max) && std::isfinite(obj.box.y_max);
            if (policy == FilterPolicy::Reject || !finite) {
                result.diagnostics.push_back({where, "dropped out-of-range box " + describe(obj.box)});
                continue;
            }
            const Box clipped{clip(obj.box.x_min), clip(obj.box.y_min), clip(obj.box.x_max),
                              clip(obj.box.y_max)};
            if (!is_valid(clipped)) {
                result.diagnostics.push_back(
                    {where, "dropped box " + describe(obj.box) + ", degenerate after clamping"});
                continue;
            }
            result.diagnostics.push_back(
                {where, "clamped box " + describe(obj.box) + " to " + describe(clipped)});
            obj.box = clipped;
            kept.push_back(std::move(obj));
        }
        frame.objects = std::move(kept);
    }
    result.frames = std::move(frames);
    return result;
}

}  // namespace vdeval
