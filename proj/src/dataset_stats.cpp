#include "vdeval/dataset_stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace vdeval {

namespace {

int bin_of(double v, int bins) {
    const int k = static_cast<int>(std::floor(v * static_cast<double>(bins)));
    return std::clamp(k, 0, bins - 1);
}

}  // namespace

Histogram2D::Histogram2D(int grid) : grid_(grid) {
    if (grid < 1) throw ValidationError("histogram grid must be >= 1, got " + std::to_string(grid));
    counts_.assign(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid), 0);
}

std::size_t Histogram2D::at(int x_bin, int y_bin) const {
    if (x_bin < 0 || y_bin < 0 || x_bin >= grid_ || y_bin >= grid_) {
        throw std::out_of_range("histogram bin out of range");
    }
    return counts_[static_cast<std::size_t>(y_bin) * static_cast<std::size_t>(grid_) +
                   static_cast<std::size_t>(x_bin)];
}

void Histogram2D::add(double x, double y) {
    const auto xb = static_cast<std::size_t>(bin_of(x, grid_));
    const auto yb = static_cast<std::size_t>(bin_of(y, grid_));
    ++counts_[yb * static_cast<std::size_t>(grid_) + xb];
    ++total_;
}

void Histogram2D::merge(const Histogram2D& other) {
    if (other.grid_ != grid_) throw ValidationError("cannot merge histograms of different grids");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    total_ += other.total_;
}

std::vector<double> uniform_edges(int bins) {
    if (bins < 1) throw ValidationError("bin count must be >= 1");
    std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i) {
        edges[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(bins);
    }
    return edges;
}

Histogram2D centroid_distribution(std::span<const GroundTruthFrame> frames, int grid) {
    Histogram2D hist(grid);
    for (const auto& frame : frames) {
        for (const auto& obj : frame.objects) {
            const Point c = center(obj.box);
            hist.add(c.x, c.y);
        }
    }
    return hist;
}

Histogram1D area_distribution(std::span<const GroundTruthFrame> frames,
                              std::span<const double> edges) {
    if (edges.size() < 2) throw ValidationError("area histogram needs at least two edges");
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (!(edges[i] > edges[i - 1])) throw ValidationError("area edges must be strictly increasing");
    }
    if (edges.front() > 0.0 || edges.back() < 1.0) {
        throw ValidationError("area edges must cover [0, 1]");
    }

    Histogram1D hist;
    hist.edges.assign(edges.begin(), edges.end());
    hist.counts.assign(edges.size() - 1, 0);
    for (const auto& frame : frames) {
        for (const auto& obj : frame.objects) {
            const double a = obj.box.area();
            auto it = std::upper_bound(edges.begin(), edges.end(), a);
            std::size_t bin = static_cast<std::size_t>(it - edges.begin());
            bin = bin == 0 ? 0 : bin - 1;
            bin = std::min(bin, hist.counts.size() - 1);
            ++hist.counts[bin];
            ++hist.total;
        }
    }
    return hist;
}

Histogram1D area_distribution(std::span<const GroundTruthFrame> frames) {
    const auto edges = uniform_edges();
    return area_distribution(frames, edges);
}

namespace {

std::vector<TagRow> tally(std::span<const VideoManifest> manifests,
                          const std::map<std::string, std::size_t>& boxes_per_video,
                          const std::optional<std::string> VideoManifest::*tag_field) {
    std::map<std::string, TagRow> rows;
    std::size_t videos = 0;
    std::size_t frames = 0;
    std::size_t boxes = 0;
    for (const auto& m : manifests) {
        const auto& tag = m.*tag_field;
        const std::string key = tag ? *tag : std::string(kUntagged);
        auto& row = rows[key];
        row.tag = key;
        ++row.videos;
        row.frames += m.frame_count;
        const auto it = boxes_per_video.find(m.video_id);
        const std::size_t b = it == boxes_per_video.end() ? 0 : it->second;
        row.boxes += b;
        ++videos;
        frames += m.frame_count;
        boxes += b;
    }
    auto pct = [](std::size_t part, std::size_t whole) {
        return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
    };
    std::vector<TagRow> out;
    for (auto& [key, row] : rows) {
        row.video_percent = pct(row.videos, videos);
        row.frame_percent = pct(row.frames, frames);
        row.box_percent = pct(row.boxes, boxes);
        out.push_back(row);
    }
    return out;
}

}  // namespace

SplitSummary split_summary(std::span<const VideoManifest> manifests,
                           std::span<const GroundTruthFrame> frames) {
    std::set<std::string> known;
    for (const auto& m : manifests) known.insert(m.video_id);

    std::map<std::string, std::size_t> boxes_per_video;
    std::set<std::string> missing;
    for (const auto& f : frames) {
        if (!known.contains(f.video_id)) missing.insert(f.video_id);
        boxes_per_video[f.video_id] += f.objects.size();
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
        throw ValidationError("videos missing from the manifest: " + list);
    }

    SplitSummary summary;
    summary.by_split = tally(manifests, boxes_per_video, &VideoManifest::split_tag);
    summary.by_environment = tally(manifests, boxes_per_video, &VideoManifest::environment_tag);
    return summary;
}

}  // namespace vdeval
