#include "vdeval/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <string>
#include <vector>

namespace vdeval {

namespace {

std::vector<std::string_view> split_whitespace(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

ParseError line_error(std::size_t line_no, const std::string& message) {
    return ParseError("line " + std::to_string(line_no) + ": " + message, std::nullopt, line_no);
}

std::size_t class_index_of(const std::string& label, std::span<const std::string> class_names) {
    if (class_names.empty()) {
        std::size_t index = 0;
        const auto [end, ec] = std::from_chars(label.data(), label.data() + label.size(), index);
        if (label.empty() || ec != std::errc{} || end != label.data() + label.size()) {
            throw ValidationError("class '" + label +
                                  "' is not numeric and no class table was given");
        }
        return index;
    }
    const auto it = std::find(class_names.begin(), class_names.end(), label);
    if (it == class_names.end()) {
        throw ValidationError("class '" + label + "' is not in the class table");
    }
    return static_cast<std::size_t>(it - class_names.begin());
}

}  // namespace

GroundTruthFrame parse_yolo_labels(std::string_view text, const FrameId& identity,
                                   std::span<const std::string> class_names) {
    GroundTruthFrame frame{identity.video_id, identity.frame_index, {}};
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        const std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

        const auto fields = split_whitespace(line);
        if (fields.empty()) continue;
        if (fields.size() != 5) {
            throw line_error(line_no, "expected 5 fields, found " + std::to_string(fields.size()));
        }

        std::size_t class_index = 0;
        {
            const auto f = fields[0];
            const auto [end, ec] = std::from_chars(f.data(), f.data() + f.size(), class_index);
            if (ec != std::errc{} || end != f.data() + f.size()) {
                throw line_error(line_no, "class index '" + std::string(f) + "' is not an integer");
            }
        }
        double v[4];
        for (std::size_t k = 0; k < 4; ++k) {
            const auto f = fields[k + 1];
            const auto [end, ec] = std::from_chars(f.data(), f.data() + f.size(), v[k]);
            if (ec != std::errc{} || end != f.data() + f.size()) {
                throw line_error(line_no, "field '" + std::string(f) + "' is not a number");
            }
            if (!(v[k] >= 0.0 && v[k] <= 1.0)) {
                throw line_error(line_no, "value " + std::string(f) + " outside [0,1]");
            }
        }
        const double cx = v[0], cy = v[1], w = v[2], h = v[3];
        if (w <= 0.0 || h <= 0.0) throw line_error(line_no, "zero width or height");

        GroundTruthObject obj;
        if (class_names.empty()) {
            obj.object_class = std::to_string(class_index);
        } else if (class_index < class_names.size()) {
            obj.object_class = canonical_class(class_names[class_index]);
        } else {
            throw line_error(line_no, "class index " + std::to_string(class_index) +
                                          " outside the class table");
        }
        obj.box = Box{cx - w / 2.0, cy - h / 2.0, cx + w / 2.0, cy + h / 2.0};
        frame.objects.push_back(std::move(obj));
    }
    return frame;
}

std::string write_yolo_labels(const GroundTruthFrame& frame,
                              std::span<const std::string> class_names) {
    std::vector<std::string> canonical(class_names.size());
    std::transform(class_names.begin(), class_names.end(), canonical.begin(),
                   [](const std::string& s) { return canonical_class(s); });

    std::string out;
    char buf[128];
    for (const auto& obj : frame.objects) {
        const std::size_t index = class_index_of(obj.object_class, canonical);
        const Point c = center(obj.box);
        const int n = std::snprintf(buf, sizeof buf, "%zu %.6f %.6f %.6f %.6f\n", index, c.x, c.y,
                                    obj.box.width(), obj.box.height());
        out.append(buf, static_cast<std::size_t>(n));
    }
    return out;
}

}  // namespace vdeval
