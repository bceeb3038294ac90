#include "vdeval/ingest.hpp"

#include <json.hpp>

#include <set>

namespace vdeval {

namespace {

using nlohmann::json;

std::optional<std::string> optional_tag(const json& entry, const char* key) {
    if (!entry.contains(key) || entry[key].is_null()) return std::nullopt;
    if (!entry[key].is_string()) throw ValidationError(std::string(key) + " must be a string");
    auto tag = entry[key].get<std::string>();
    if (tag.empty()) return std::nullopt;
    return tag;
}

}  // namespace

std::vector<VideoManifest> parse_manifest(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("manifest: ") + e.what(), e.byte, std::nullopt);
    }
    if (!doc.is_object() || !doc.contains("videos") || !doc["videos"].is_array()) {
        throw ValidationError("manifest: expected an object with a \"videos\" array");
    }

    std::vector<VideoManifest> out;
    std::set<std::string> seen;
    for (const auto& entry : doc["videos"]) {
        const std::string where = "manifest entry " + std::to_string(out.size());
        try {
            if (!entry.is_object()) throw ValidationError("expected an object");
            VideoManifest m;
            if (!entry.contains("video_id") || !entry["video_id"].is_string() ||
                entry["video_id"].get<std::string>().empty()) {
                throw ValidationError("video_id must be a non-empty string");
            }
            m.video_id = entry["video_id"].get<std::string>();
            if (!entry.contains("frame_count") || !entry["frame_count"].is_number_unsigned() ||
                entry["frame_count"].get<std::uint64_t>() < 1) {
                throw ValidationError("frame_count must be an integer >= 1");
            }
            m.frame_count = entry["frame_count"].get<std::uint64_t>();
            for (const char* key : {"width", "height"}) {
                if (!entry.contains(key) || !entry[key].is_number_unsigned() ||
                    entry[key].get<std::uint64_t>() < 1 || entry[key].get<std::uint64_t>() > 1u << 30) {
                    throw ValidationError(std::string(key) + " must be a positive integer");
                }
            }
            m.frame_size = {entry["width"].get<int>(), entry["height"].get<int>()};
            if (entry.contains("fps")) {
                if (!entry["fps"].is_number() || !(entry["fps"].get<double>() > 0.0)) {
                    throw ValidationError("fps must be a positive number");
                }
                m.fps = entry["fps"].get<double>();
            }
            m.environment_tag = optional_tag(entry, "environment");
            m.split_tag = optional_tag(entry, "split");
            if (!seen.insert(m.video_id).second) {
                throw ValidationError("duplicate video_id '" + m.video_id + "'");
            }
            out.push_back(std::move(m));
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
    }
    return out;
}

std::string write_manifest(std::span<const VideoManifest> manifests) {
    nlohmann::ordered_json doc;
    doc["videos"] = nlohmann::ordered_json::array();
    for (const auto& m : manifests) {
        nlohmann::ordered_json e;
        e["video_id"] = m.video_id;
        e["frame_count"] = m.frame_count;
        e["width"] = m.frame_size.width;
        e["height"] = m.frame_size.height;
        e["fps"] = m.fps;
        if (m.environment_tag) e["environment"] = *m.environment_tag;
        if (m.split_tag) e["split"] = *m.split_tag;
        doc["videos"].push_back(std::move(e));
    }
    return doc.dump(2) + "\n";
}

}  // namespace vdeval
