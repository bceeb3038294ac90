#pragma once

#include <string_view>

namespace vdeval {

/// Axis-aligned rectangle in normalized image coordinates (fractions of
/// frame width and height). A valid box has 0 <= x_min < x_max <= 1 and
/// 0 <= y_min < y_max <= 1; boxes read from files may violate this until
/// they pass the ingest filter.
struct Box {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const noexcept { return x_max - x_min; }
    double height() const noexcept { return y_max - y_min; }
    double area() const noexcept { return width() * height(); }

    friend bool operator==(const Box&, const Box&) = default;
};

bool is_valid(const Box& box) noexcept;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Image dimensions in pixels.
struct FrameSize {
    int width = 0;
    int height = 0;

    friend bool operator==(const FrameSize&, const FrameSize&) = default;
};

bool is_valid(FrameSize size) noexcept;

/// Rectangle in pixel coordinates, as found in VOC annotations.
struct PixelRect {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;
};

/// Area of the overlap of two closed rectangles; touching edges give 0.
double intersection_area(const Box& a, const Box& b) noexcept;

double iou(const Box& a, const Box& b) noexcept;

Point center(const Box& box) noexcept;

/// Divides x by the frame width and y by the frame height. No clamping is
/// applied. Throws ValidationError for an invalid size or for a rectangle
/// with zero width or height; `context` is prepended to the message.
Box normalize(const PixelRect& rect, FrameSize size, std::string_view context = {});

}  // namespace vdeval
