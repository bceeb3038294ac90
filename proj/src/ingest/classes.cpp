#include "vdeval/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace vdeval {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string canonical_class(std::string_view label) {
    std::string out(trim(label));
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

FrameId parse_frame_id(std::string_view stem) {
    const auto pos = stem.rfind('_');
    if (pos == std::string_view::npos || pos == 0 || pos + 1 == stem.size()) {
        throw ValidationError("frame name '" + std::string(stem) +
                              "' does not follow <video_id>_<frame_index>");
    }
    const std::string_view digits = stem.substr(pos + 1);
    FrameId id{std::string(stem.substr(0, pos)), 0};
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id.frame_index);
    if (ec != std::errc{} || end != digits.data() + digits.size()) {
        throw ValidationError("frame name '" + std::string(stem) + "' has a non-numeric frame index");
    }
    return id;
}

std::string format_frame_id(const FrameId& id, int width) {
    std::string index = std::to_string(id.frame_index);
    if (static_cast<int>(index.size()) < width) {
        index.insert(0, static_cast<std::size_t>(width) - index.size(), '0');
    }
    return id.video_id + "_" + index;
}

std::vector<std::string> parse_class_names(std::string_view text) {
    std::vector<std::string> names;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view line = text.substr(0, nl);
        if (const auto name = canonical_class(line); !name.empty()) names.push_back(name);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return names;
}

}  // namespace vdeval
