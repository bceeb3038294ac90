#include "vdeval/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace vdeval {

namespace fs = std::filesystem;

std::string_view tool_version() noexcept { return VDEVAL_VERSION; }

void validate(const RunConfig& config, bool needs_detections) {
    auto unit = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ValidationError(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
        }
    };
    unit(config.match_iou, "match-iou");
    unit(config.link_iou, "link-iou");
    if (config.conf_threshold) unit(*config.conf_threshold, "conf");
    if (!(config.edge_tolerance >= 0.0 && config.edge_tolerance < 0.5)) {
        throw ValidationError("edge tolerance must lie in [0, 0.5)");
    }
    if (config.centroid_grid < 1) throw ValidationError("centroid grid must be >= 1");
    if (config.area_bins < 1) throw ValidationError("area bins must be >= 1");
    if (config.gt_path.empty()) throw ValidationError("ground-truth path is empty");
    if (needs_detections && config.detections_path.empty()) {
        throw ValidationError("detections path is empty");
    }
    if (config.out_dir.empty()) throw ValidationError("output directory is empty");
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("error reading " + path.string());
    return data;
}

void write_file(const fs::path& path, std::string_view contents) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("error writing " + path.string());
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::size_t box_count(std::span<const GroundTruthFrame> frames) noexcept {
    std::size_t n = 0;
    for (const auto& f : frames) n += f.objects.size();
    return n;
}

namespace {

bool is_class_table(const fs::path& p) {
    return p.filename() == "classes.txt" || p.extension() == ".names";
}

std::vector<fs::path> annotation_files(const fs::path& root) {
    std::error_code ec;
    if (fs::is_regular_file(root, ec)) return {root};
    if (!fs::is_directory(root, ec)) throw IoError("ground-truth path not found: " + root.string());
    std::vector<fs::path> files;
    for (fs::recursive_directory_iterator it(root, ec), end; it != end; it.increment(ec)) {
        if (ec) break;
        if (!it->is_regular_file()) continue;
        const auto& p = it->path();
        if (p.extension() == ".xml" || (p.extension() == ".txt" && !is_class_table(p))) {
            files.push_back(p);
        }
    }
    if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
    std::sort(files.begin(), files.end());
    return files;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

GroundTruthSet load_ground_truth(const RunConfig& config) {
    GroundTruthSet set;
    std::map<std::string, FrameSize> sizes;
    if (config.manifest_path) {
        const auto text = read_file(*config.manifest_path);
        set.digests["manifest"] = sha256_hex(text);
        set.manifests = parse_manifest(text);
        for (const auto& m : set.manifests) sizes[m.video_id] = m.frame_size;
    }
    if (config.classes_path) {
        const auto text = read_file(*config.classes_path);
        set.digests["classes"] = sha256_hex(text);
        set.class_names = parse_class_names(text);
    }

    const auto files = annotation_files(config.gt_path);
    std::string listing;
    std::vector<GroundTruthFrame> frames;
    std::set<FrameId> seen;
    for (const auto& path : files) {
        const auto text = read_file(path);
        const auto relative = path == config.gt_path ? path.filename() : path.lexically_relative(config.gt_path);
        listing += relative.generic_string() + '\0' + sha256_hex(text) + '\n';
        try {
            const auto id = parse_frame_id(path.stem().string());
            GroundTruthFrame frame;
            if (path.extension() == ".xml") {
                std::optional<FrameSize> fallback;
                if (const auto it = sizes.find(id.video_id); it != sizes.end()) fallback = it->second;
                frame = parse_voc(text, fallback, id);
            } else {
                frame = parse_yolo_labels(text, id, set.class_names);
            }
            if (!seen.insert(frame.id()).second) {
                throw ValidationError("duplicate annotation for frame " + format_frame_id(frame.id()));
            }
            set.sources[frame.id()] = path;
            frames.push_back(std::move(frame));
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ": " + e.what(), e.byte_offset(), e.line());
        } catch (const ValidationError& e) {
            throw ValidationError(path.string() + ": " + e.what());
        }
    }
    set.digests["ground_truth"] = sha256_hex(listing);

    std::sort(frames.begin(), frames.end(),
              [](const auto& a, const auto& b) { return a.id() < b.id(); });
    auto filtered = filter_boxes(std::move(frames), config.filter_policy);
    set.frames = std::move(filtered.frames);
    set.diagnostics = std::move(filtered.diagnostics);
    return set;
}

DetectionSet load_detections(const RunConfig& config) {
    const auto text = read_file(config.detections_path);
    DetectionSet set;
    set.digest = sha256_hex(text);
    auto parsed = parse_detections(text, config.detection_policy);
    set.detections = std::move(parsed.detections);
    set.diagnostics = std::move(parsed.diagnostics);
    for (auto& d : set.diagnostics) d.location = config.detections_path.string() + " " + d.location;
    return set;
}

RunReport evaluate(std::span<const GroundTruthFrame> frames, std::span<const Detection> detections,
                   const RunConfig& config) {
    validate(config, false);
    RunReport report;
    report.config = config;
    report.box_count = box_count(frames);
    if (report.box_count == 0) throw EmptyGroundTruthError("ground truth contains no boxes");

    std::set<std::string> videos;
    for (const auto& f : frames) videos.insert(f.video_id);
    report.video_count = videos.size();
    report.frame_count = frames.size();
    report.detection_count = detections.size();

    AccuracyConfig acc;
    acc.match_iou = config.match_iou;
    acc.conf_threshold = config.conf_threshold;
    acc.interpolation = config.interpolation;
    acc.mean_iou_mode = config.mean_iou_mode;
    report.accuracy = evaluate_accuracy(detections, frames, acc);

    const auto matches =
        match_all(detections, frames, config.match_iou, report.accuracy.conf_threshold);
    report.tracklets = build_all_tracklets(frames, config.link_iou);
    attach_detections(report.tracklets, matches);
    report.stability = stability_report(report.tracklets);
    report.failures = classify_false_negatives(matches, frames, config.edge_tolerance);
    return report;
}

RunReport evaluate(const RunConfig& config) {
    validate(config, true);
    auto gt = load_ground_truth(config);
    auto dets = load_detections(config);
    auto report = evaluate(gt.frames, dets.detections, config);
    report.digests = std::move(gt.digests);
    report.digests["detections"] = dets.digest;
    report.diagnostics = std::move(gt.diagnostics);
    std::move(dets.diagnostics.begin(), dets.diagnostics.end(), std::back_inserter(report.diagnostics));
    report.generated_at = utc_timestamp();
    return report;
}

}  // namespace vdeval
