#include "vdeval/ingest.hpp"

#include <expat.h>

#include <charconv>
#include <filesystem>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace vdeval {

namespace {

struct VocObject {
    std::string name;
    std::optional<std::string> xmin, ymin, xmax, ymax;
};

// Collects the handful of VOC fields we need while expat walks the tree.
struct VocCollector {
    std::vector<std::string> path;
    std::string text;
    std::optional<std::string> filename;
    std::optional<std::string> width;
    std::optional<std::string> height;
    bool has_size = false;
    std::vector<VocObject> objects;
    std::string root_error;

    bool at(std::initializer_list<std::string_view> expected) const {
        if (path.size() != expected.size()) return false;
        std::size_t i = 0;
        for (auto name : expected) {
            if (path[i++] != name) return false;
        }
        return true;
    }
};

void on_start(void* data, const XML_Char* name, const XML_Char**) {
    auto& c = *static_cast<VocCollector*>(data);
    c.path.emplace_back(name);
    c.text.clear();
    if (c.path.size() == 1 && c.path.front() != "annotation" && c.root_error.empty()) {
        c.root_error = "root element is <" + c.path.front() + ">, expected <annotation>";
    }
    if (c.at({"annotation", "size"})) c.has_size = true;
    if (c.at({"annotation", "object"})) c.objects.emplace_back();
}

void on_end(void* data, const XML_Char*) {
    auto& c = *static_cast<VocCollector*>(data);
    if (c.at({"annotation", "filename"})) {
        c.filename = c.text;
    } else if (c.at({"annotation", "size", "width"})) {
        c.width = c.text;
    } else if (c.at({"annotation", "size", "height"})) {
        c.height = c.text;
    } else if (c.at({"annotation", "object", "name"})) {
        c.objects.back().name = c.text;
    } else if (c.path.size() == 4 && c.at({"annotation", "object", "bndbox", c.path[3]})) {
        auto& obj = c.objects.back();
        const auto& field = c.path[3];
        if (field == "xmin") obj.xmin = c.text;
        else if (field == "ymin") obj.ymin = c.text;
        else if (field == "xmax") obj.xmax = c.text;
        else if (field == "ymax") obj.ymax = c.text;
    }
    c.path.pop_back();
    c.text.clear();
}

void on_text(void* data, const XML_Char* s, int len) {
    static_cast<VocCollector*>(data)->text.append(s, static_cast<std::size_t>(len));
}

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

double parse_number(const std::string& raw, std::string_view what) {
    const auto s = trim(raw);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) {
        throw ValidationError(std::string(what) + " is not a number: '" + raw + "'");
    }
    return value;
}

std::optional<FrameSize> document_size(const VocCollector& c) {
    if (!c.has_size || !c.width || !c.height) return std::nullopt;
    const double w = parse_number(*c.width, "<size>/<width>");
    const double h = parse_number(*c.height, "<size>/<height>");
    FrameSize size{static_cast<int>(w), static_cast<int>(h)};
    if (static_cast<double>(size.width) != w || static_cast<double>(size.height) != h) {
        throw ValidationError("<size> must hold integer pixel dimensions");
    }
    // Some exporters write 0x0 when the image was never opened.
    if (!is_valid(size)) return std::nullopt;
    return size;
}

}  // namespace

GroundTruthFrame parse_voc(std::string_view document, std::optional<FrameSize> size_fallback,
                           std::optional<FrameId> identity) {
    std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
        XML_ParserCreate(nullptr), &XML_ParserFree);
    if (!parser) throw std::bad_alloc();

    VocCollector collector;
    XML_SetUserData(parser.get(), &collector);
    XML_SetElementHandler(parser.get(), on_start, on_end);
    XML_SetCharacterDataHandler(parser.get(), on_text);

    if (document.size() > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
        throw ValidationError("VOC document too large");
    }
    if (XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), 1) ==
        XML_STATUS_ERROR) {
        const auto offset = static_cast<std::size_t>(XML_GetCurrentByteIndex(parser.get()));
        const auto line = static_cast<std::size_t>(XML_GetCurrentLineNumber(parser.get()));
        throw ParseError("malformed XML at byte " + std::to_string(offset) + ": " +
                             XML_ErrorString(XML_GetErrorCode(parser.get())),
                         offset, line);
    }
    if (!collector.root_error.empty()) throw ParseError(collector.root_error, 0, 1);

    GroundTruthFrame frame;
    if (identity) {
        frame.video_id = identity->video_id;
        frame.frame_index = identity->frame_index;
    } else if (collector.filename && !trim(*collector.filename).empty()) {
        const auto stem = std::filesystem::path(std::string(trim(*collector.filename))).stem();
        auto id = parse_frame_id(stem.string());
        frame.video_id = std::move(id.video_id);
        frame.frame_index = id.frame_index;
    } else {
        throw ValidationError("VOC document has no <filename> and no frame identity was given");
    }

    const std::string where = format_frame_id(frame.id());
    auto size = document_size(collector);
    if (!size) size = size_fallback;
    if (!size) throw ValidationError(where + ": missing <size> and no fallback frame size");

    frame.objects.reserve(collector.objects.size());
    for (std::size_t i = 0; i < collector.objects.size(); ++i) {
        const auto& obj = collector.objects[i];
        const std::string ctx = where + " object " + std::to_string(i);
        GroundTruthObject out;
        out.object_class = canonical_class(obj.name);
        if (out.object_class.empty()) throw ValidationError(ctx + ": missing <name>");
        if (!obj.xmin || !obj.ymin || !obj.xmax || !obj.ymax) {
            throw ValidationError(ctx + ": incomplete <bndbox>");
        }
        const PixelRect rect{parse_number(*obj.xmin, ctx + " xmin"),
                             parse_number(*obj.ymin, ctx + " ymin"),
                             parse_number(*obj.xmax, ctx + " xmax"),
                             parse_number(*obj.ymax, ctx + " ymax")};
        out.box = normalize(rect, *size, ctx);
        frame.objects.push_back(std::move(out));
    }
    return frame;
}

}  // namespace vdeval
