#include "vdeval/ingest.hpp"

#include <json.hpp>

#include <string>

namespace vdeval {

namespace {

using nlohmann::json;

Detection detection_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("expected a JSON object");
    for (const char* key : {"video_id", "frame_index", "class", "confidence", "box"}) {
        if (!j.contains(key)) throw ValidationError(std::string("missing key '") + key + "'");
    }
    Detection d;
    if (!j["video_id"].is_string()) throw ValidationError("video_id must be a string");
    d.video_id = j["video_id"].get<std::string>();
    if (d.video_id.empty()) throw ValidationError("video_id is empty");

    if (!j["frame_index"].is_number_unsigned()) {
        throw ValidationError("frame_index must be a non-negative integer");
    }
    d.frame_index = j["frame_index"].get<std::uint64_t>();

    if (!j["class"].is_string()) throw ValidationError("class must be a string");
    d.object_class = canonical_class(j["class"].get<std::string>());
    if (d.object_class.empty()) throw ValidationError("class is empty");

    if (!j["confidence"].is_number()) throw ValidationError("confidence must be a number");
    d.confidence = j["confidence"].get<double>();
    if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) {
        throw ValidationError("confidence " + j["confidence"].dump() + " outside [0,1]");
    }

    const auto& box = j["box"];
    if (!box.is_array() || box.size() != 4) {
        throw ValidationError("box must be an array [x_min, y_min, x_max, y_max]");
    }
    for (const auto& v : box) {
        if (!v.is_number()) throw ValidationError("box coordinates must be numbers");
    }
    d.box = Box{box[0].get<double>(), box[1].get<double>(), box[2].get<double>(),
                box[3].get<double>()};
    if (!is_valid(d.box)) throw ValidationError("invalid box " + box.dump());
    return d;
}

}  // namespace

DetectionParseResult parse_detections(std::string_view jsonl, ErrorPolicy policy) {
    DetectionParseResult result;
    std::size_t line_no = 0;
    while (!jsonl.empty()) {
        ++line_no;
        const auto nl = jsonl.find('\n');
        const std::string_view line = jsonl.substr(0, nl);
        jsonl.remove_prefix(nl == std::string_view::npos ? jsonl.size() : nl + 1);
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

        try {
            json j;
            try {
                j = json::parse(line);
            } catch (const json::parse_error& e) {
                throw ValidationError(std::string("invalid JSON: ") + e.what());
            }
            result.detections.push_back(detection_from_json(j));
        } catch (const ValidationError& e) {
            const std::string where = "line " + std::to_string(line_no);
            if (policy == ErrorPolicy::FailFast) {
                throw ParseError(where + ": " + e.what(), std::nullopt, line_no);
            }
            result.diagnostics.push_back({where, e.what()});
        }
    }
    return result;
}

std::string write_detection_line(const Detection& d) {
    nlohmann::ordered_json j;
    j["video_id"] = d.video_id;
    j["frame_index"] = d.frame_index;
    j["class"] = d.object_class;
    j["confidence"] = d.confidence;
    j["box"] = {d.box.x_min, d.box.y_min, d.box.x_max, d.box.y_max};
    return j.dump() + "\n";
}

}  // namespace vdeval
