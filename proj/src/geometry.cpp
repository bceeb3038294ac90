#include "vdeval/geometry.hpp"

#include "vdeval/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vdeval {

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Validation: return kExitValidation;
        case ErrorKind::Io: return kExitIo;
        case ErrorKind::EmptyGroundTruth: return kExitEmptyGroundTruth;
    }
    return kExitValidation;
}

bool is_valid(const Box& box) noexcept {
    return std::isfinite(box.x_min) && std::isfinite(box.y_min) && std::isfinite(box.x_max) &&
           std::isfinite(box.y_max) && box.x_min >= 0.0 && box.y_min >= 0.0 &&
           box.x_max <= 1.0 && box.y_max <= 1.0 && box.x_min < box.x_max &&
           box.y_min < box.y_max;
}

bool is_valid(FrameSize size) noexcept { return size.width >= 1 && size.height >= 1; }

double intersection_area(const Box& a, const Box& b) noexcept {
    const double w = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    const double h = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    if (w <= 0.0 || h <= 0.0) return 0.0;
    return w * h;
}

double iou(const Box& a, const Box& b) noexcept {
    const double inter = intersection_area(a, b);
    if (inter <= 0.0) return 0.0;
    const double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) return 0.0;
    return std::clamp(inter / uni, 0.0, 1.0);
}

Point center(const Box& box) noexcept {
    return {(box.x_min + box.x_max) / 2.0, (box.y_min + box.y_max) / 2.0};
}

Box normalize(const PixelRect& rect, FrameSize size, std::string_view context) {
    const std::string prefix = context.empty() ? std::string{} : std::string(context) + ": ";
    if (!is_valid(size)) {
        throw ValidationError(prefix + "invalid frame size " + std::to_string(size.width) + "x" +
                              std::to_string(size.height));
    }
    const double w = static_cast<double>(size.width);
    const double h = static_cast<double>(size.height);
    Box box{rect.x_min / w, rect.y_min / h, rect.x_max / w, rect.y_max / h};
    if (!std::isfinite(box.x_min) || !std::isfinite(box.y_min) || !std::isfinite(box.x_max) ||
        !std::isfinite(box.y_max)) {
        throw ValidationError(prefix + "non-finite box coordinate");
    }
    if (box.width() == 0.0 || box.height() == 0.0) {
        throw ValidationError(prefix + "degenerate box (zero width or height)");
    }
    return box;
}

}  // namespace vdeval
