#include "vdeval/tracklets.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <tuple>

namespace vdeval {

std::size_t Tracklet::matched_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(frames.begin(), frames.end(), [](const TrackletFrame& f) { return f.detected(); }));
}

namespace {

struct Link {
    std::size_t prev;
    std::size_t next;
    double iou;
};

// Greedy one-to-one linking by descending IOU. Returns next-object index for
// every previous-frame object, or npos when it has no successor.
std::vector<std::size_t> link_frames(const GroundTruthFrame& prev, const GroundTruthFrame& next,
                                     double link_iou) {
    constexpr auto npos = static_cast<std::size_t>(-1);
    std::vector<Link> candidates;
    for (std::size_t i = 0; i < prev.objects.size(); ++i) {
        for (std::size_t j = 0; j < next.objects.size(); ++j) {
            if (prev.objects[i].object_class != next.objects[j].object_class) continue;
            const double v = iou(prev.objects[i].box, next.objects[j].box);
            if (v > 0.0 && v >= link_iou) candidates.push_back({i, j, v});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Link& a, const Link& b) {
        return std::tie(b.iou, a.prev, a.next) < std::tie(a.iou, b.prev, b.next);
    });

    std::vector<std::size_t> successor(prev.objects.size(), npos);
    std::vector<bool> taken(next.objects.size(), false);
    for (const auto& link : candidates) {
        if (successor[link.prev] != npos || taken[link.next]) continue;
        successor[link.prev] = link.next;
        taken[link.next] = true;
    }
    return successor;
}

}  // namespace

std::vector<Tracklet> build_tracklets(std::span<const GroundTruthFrame> video_frames, double link_iou) {
    if (!(link_iou >= 0.0 && link_iou <= 1.0)) {
        throw ValidationError("link_iou must lie in [0,1]");
    }
    std::vector<Tracklet> tracklets;
    if (video_frames.empty()) return tracklets;

    const std::string& video_id = video_frames.front().video_id;
    for (std::size_t f = 0; f < video_frames.size(); ++f) {
        const auto& frame = video_frames[f];
        if (frame.video_id != video_id) {
            throw ValidationError("build_tracklets: frames of videos '" + video_id + "' and '" +
                                  frame.video_id + "' mixed");
        }
        if (f > 0) {
            const auto previous = video_frames[f - 1].frame_index;
            if (frame.frame_index == previous) {
                throw ValidationError("duplicate frame index " + format_frame_id(frame.id()));
            }
            if (frame.frame_index < previous) {
                throw ValidationError("frames not sorted at " + format_frame_id(frame.id()));
            }
        }
    }

    constexpr auto npos = static_cast<std::size_t>(-1);
    // Tracklet index currently owned by each object of the previous frame.
    std::vector<std::size_t> owner;
    for (std::size_t f = 0; f < video_frames.size(); ++f) {
        const auto& frame = video_frames[f];
        std::vector<std::size_t> next_owner(frame.objects.size(), npos);
        if (f > 0 && video_frames[f - 1].frame_index + 1 == frame.frame_index) {
            const auto successor = link_frames(video_frames[f - 1], frame, link_iou);
            for (std::size_t i = 0; i < successor.size(); ++i) {
                if (successor[i] != npos) next_owner[successor[i]] = owner[i];
            }
        }
        for (std::size_t j = 0; j < frame.objects.size(); ++j) {
            if (next_owner[j] == npos) {
                next_owner[j] = tracklets.size();
                Tracklet t;
                t.id = tracklets.size();
                t.video_id = video_id;
                t.object_class = frame.objects[j].object_class;
                tracklets.push_back(std::move(t));
            }
            tracklets[next_owner[j]].frames.push_back(
                {frame.frame_index, j, frame.objects[j].box, std::nullopt});
        }
        owner = std::move(next_owner);
    }
    return tracklets;
}

std::vector<Tracklet> build_all_tracklets(std::span<const GroundTruthFrame> frames, double link_iou) {
    std::map<std::string, std::vector<GroundTruthFrame>> videos;
    for (const auto& frame : frames) videos[frame.video_id].push_back(frame);
    for (auto& [id, list] : videos) {
        std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
            return a.frame_index < b.frame_index;
        });
    }

    std::vector<std::future<std::vector<Tracklet>>> jobs;
    jobs.reserve(videos.size());
    for (const auto& [id, list] : videos) {
        jobs.push_back(std::async(std::launch::async, [&list, link_iou] {
            return build_tracklets(list, link_iou);
        }));
    }
    std::vector<Tracklet> all;
    for (auto& job : jobs) {
        auto part = job.get();
        std::move(part.begin(), part.end(), std::back_inserter(all));
    }
    return all;
}

void attach_detections(std::span<Tracklet> tracklets, std::span<const FrameMatchResult> matches) {
    // (video, frame, object) -> tracklet frame slot
    std::map<std::tuple<std::string_view, std::uint64_t, std::size_t>, TrackletFrame*> slots;
    for (auto& t : tracklets) {
        for (auto& f : t.frames) {
            f.detection.reset();
            slots[{t.video_id, f.frame_index, f.object_index}] = &f;
        }
    }
    for (const auto& frame : matches) {
        for (const auto& pair : frame.true_positives) {
            const auto it = slots.find({frame.video_id, frame.frame_index, pair.object_index});
            if (it == slots.end() || it->second->gt_box != pair.object.box) {
                throw ValidationError("match references unknown ground-truth box " +
                                      std::to_string(pair.object_index) + " in " +
                                      format_frame_id(frame.id()));
            }
            it->second->detection = pair.detection;
        }
    }
}

}  // namespace vdeval
