#pragma once

#include "vdeval/ingest.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vdeval {

inline constexpr int kDefaultCentroidGrid = 50;
inline constexpr int kDefaultAreaBins = 50;

/// Square grid over normalized box centers; bin (x, y) covers
/// [x/g, (x+1)/g) x [y/g, (y+1)/g), with the last bin closed at 1.
class Histogram2D {
public:
    explicit Histogram2D(int grid = kDefaultCentroidGrid);

    int grid() const noexcept { return grid_; }
    std::size_t total() const noexcept { return total_; }
    std::size_t at(int x_bin, int y_bin) const;
    const std::vector<std::size_t>& counts() const noexcept { return counts_; }  // row-major in y

    void add(double x, double y);
    /// Throws ValidationError on grid mismatch.
    void merge(const Histogram2D& other);

    friend bool operator==(const Histogram2D&, const Histogram2D&) = default;

private:
    int grid_;
    std::size_t total_ = 0;
    std::vector<std::size_t> counts_;
};

struct Histogram1D {
    std::vector<double> edges;
    std::vector<std::size_t> counts;
    std::size_t total = 0;

    friend bool operator==(const Histogram1D&, const Histogram1D&) = default;
};

/// `bins` equal-width bins over [0, 1].
std::vector<double> uniform_edges(int bins = kDefaultAreaBins);

/// Throws ValidationError when grid < 1.
Histogram2D centroid_distribution(std::span<const GroundTruthFrame> frames,
                                  int grid = kDefaultCentroidGrid);

/// Bins normalized box areas. Edges must be strictly increasing and span
/// [0, 1]; a value equal to the last edge lands in the last bin.
Histogram1D area_distribution(std::span<const GroundTruthFrame> frames,
                              std::span<const double> edges);
Histogram1D area_distribution(std::span<const GroundTruthFrame> frames);

inline constexpr const char* kUntagged = "untagged";

struct TagRow {
    std::string tag;
    std::size_t videos = 0;
    std::size_t frames = 0;  // manifest frame counts
    std::size_t boxes = 0;
    double video_percent = 0.0;
    double frame_percent = 0.0;
    double box_percent = 0.0;
};

struct SplitSummary {
    std::vector<TagRow> by_split;        // sorted by tag
    std::vector<TagRow> by_environment;  // sorted by tag
};

/// Throws ValidationError listing every annotated video missing from the
/// manifests.
SplitSummary split_summary(std::span<const VideoManifest> manifests,
                           std::span<const GroundTruthFrame> frames);

}  // namespace vdeval
