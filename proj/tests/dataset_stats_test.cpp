#include "vdeval/dataset_stats.hpp"

#include "support/synth.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace vdeval;

namespace {

GroundTruthFrame gt(std::vector<Box> boxes, std::uint64_t index = 0, const std::string& video = "v") {
    GroundTruthFrame f{video, index, {}};
    for (const auto& b : boxes) f.objects.push_back({"diver", b});
    return f;
}

VideoManifest manifest(const std::string& id, std::uint64_t frames, std::optional<std::string> env,
                       std::optional<std::string> split) {
    VideoManifest m;
    m.video_id = id;
    m.frame_count = frames;
    m.frame_size = {640, 480};
    m.environment_tag = std::move(env);
    m.split_tag = std::move(split);
    return m;
}

const TagRow& row(const std::vector<TagRow>& rows, const std::string& tag) {
    for (const auto& r : rows) {
        if (r.tag == tag) return r;
    }
    throw std::runtime_error("no row " + tag);
}

}  // namespace

TEST(Centroids, FullFrameBoxGoesToUpperBin) {
    const std::vector<GroundTruthFrame> frames{gt({{0, 0, 1, 1}})};
    const auto h = centroid_distribution(frames, 2);
    EXPECT_EQ(h.at(1, 1), 1u);
    EXPECT_EQ(h.total(), 1u);
}

TEST(Centroids, FourQuadrants) {
    const std::vector<GroundTruthFrame> frames{gt({{0.2, 0.2, 0.3, 0.3},
                                                   {0.7, 0.2, 0.8, 0.3},
                                                   {0.2, 0.7, 0.3, 0.8},
                                                   {0.7, 0.7, 0.8, 0.8}})};
    const auto h = centroid_distribution(frames, 2);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) EXPECT_EQ(h.at(x, y), 1u);
    }
}

TEST(Centroids, EmptyAndErrors) {
    const auto h = centroid_distribution({}, 50);
    EXPECT_EQ(h.total(), 0u);
    EXPECT_EQ(h.counts().size(), 2500u);
    for (auto c : h.counts()) EXPECT_EQ(c, 0u);
    EXPECT_THROW(centroid_distribution({}, 0), ValidationError);
    EXPECT_THROW(Histogram2D(-3), ValidationError);
}

TEST(Centroids, RowMajorInY) {
    Histogram2D h(4);
    h.add(0.8, 0.3);  // x bin 3, y bin 1
    EXPECT_EQ(h.counts()[1 * 4 + 3], 1u);
    EXPECT_EQ(h.at(3, 1), 1u);
    h.add(1.0, 1.0);
    EXPECT_EQ(h.at(3, 3), 1u);
}

TEST(Centroids, TotalConservesBoxes) {
    synth::Rng rng(61);
    std::vector<GroundTruthFrame> frames;
    std::size_t boxes = 0;
    for (int v = 0; v < 10; ++v) {
        auto video = synth::random_video(rng, "v" + std::to_string(v), 30, 4);
        for (auto& f : video) boxes += f.objects.size();
        frames.insert(frames.end(), video.begin(), video.end());
    }
    const auto h = centroid_distribution(frames);
    EXPECT_EQ(h.total(), boxes);
    std::size_t sum = 0;
    for (auto c : h.counts()) sum += c;
    EXPECT_EQ(sum, boxes);
    const auto a = area_distribution(frames);
    EXPECT_EQ(a.total, boxes);
    sum = 0;
    for (auto c : a.counts) sum += c;
    EXPECT_EQ(sum, boxes);
}

TEST(Centroids, MirrorEquivariance) {
    // A center exactly on a bin boundary goes to the higher bin, which is
    // not mirror symmetric; such centers are excluded here.
    synth::Rng rng(62);
    const int g = 50;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<GroundTruthFrame> frames, mirrored;
        for (int f = 0; f < 20; ++f) {
            GroundTruthFrame a{"v", static_cast<std::uint64_t>(f), {}};
            GroundTruthFrame b = a;
            for (int k = 0; k < 5; ++k) {
                const Box box = synth::random_box(rng, 0.02, 0.4);
                const double cx = (box.x_min + box.x_max) / 2 * g;
                if (std::abs(cx - std::round(cx)) < 1e-6) continue;
                a.objects.push_back({"diver", box});
                b.objects.push_back({"diver", {1 - box.x_max, box.y_min, 1 - box.x_min, box.y_max}});
            }
            frames.push_back(a);
            mirrored.push_back(b);
        }
        const auto h = centroid_distribution(frames, g);
        const auto m = centroid_distribution(mirrored, g);
        for (int x = 0; x < g; ++x) {
            for (int y = 0; y < g; ++y) ASSERT_EQ(h.at(x, y), m.at(g - 1 - x, y));
        }
    }
}

TEST(Centroids, MergeIsAssociativeSum) {
    synth::Rng rng(63);
    const auto a = synth::random_video(rng, "a", 20, 3);
    const auto b = synth::random_video(rng, "b", 20, 3);
    auto all = a;
    all.insert(all.end(), b.begin(), b.end());
    auto ha = centroid_distribution(a, 10);
    ha.merge(centroid_distribution(b, 10));
    EXPECT_EQ(ha, centroid_distribution(all, 10));
    EXPECT_THROW(ha.merge(Histogram2D(5)), ValidationError);
}

TEST(Areas, Examples) {
    const std::vector<GroundTruthFrame> full{gt({{0, 0, 1, 1}})};
    const auto h = area_distribution(full);
    EXPECT_EQ(h.counts.size(), 50u);
    EXPECT_EQ(h.counts.back(), 1u);

    const std::vector<GroundTruthFrame> small{gt({{0.1, 0.1, 0.2, 0.2}})};
    EXPECT_EQ(area_distribution(small).counts.front(), 1u);

    const auto empty = area_distribution({});
    EXPECT_EQ(empty.total, 0u);
    for (auto c : empty.counts) EXPECT_EQ(c, 0u);
}

TEST(Areas, Edges) {
    const auto e = uniform_edges(4);
    ASSERT_EQ(e.size(), 5u);
    EXPECT_EQ(e.front(), 0.0);
    EXPECT_EQ(e[2], 0.5);
    EXPECT_EQ(e.back(), 1.0);
    const std::vector<double> bad{0.0, 0.5, 0.5, 1.0};
    EXPECT_THROW(area_distribution({}, bad), ValidationError);
    const std::vector<double> short_range{0.0, 0.5};
    EXPECT_THROW(area_distribution({}, short_range), ValidationError);
    const std::vector<double> custom{0.0, 0.01, 0.1, 1.0};
    const std::vector<GroundTruthFrame> frames{gt({{0.1, 0.1, 0.2, 0.2}, {0.0, 0.0, 0.5, 0.5}})};
    const auto h = area_distribution(frames, custom);
    EXPECT_EQ(h.counts, (std::vector<std::size_t>{0, 1, 1}));
}

TEST(SplitSummaryTest, EnvironmentHalves) {
    const std::vector<VideoManifest> m{manifest("a", 10, "pool", "train"), manifest("b", 10, "ocean", "train")};
    const std::vector<GroundTruthFrame> frames{gt({{0.1, 0.1, 0.2, 0.2}}, 0, "a"), gt({}, 0, "b")};
    const auto s = split_summary(m, frames);
    ASSERT_EQ(s.by_environment.size(), 2u);
    EXPECT_EQ(s.by_environment[0].tag, "ocean");
    EXPECT_DOUBLE_EQ(row(s.by_environment, "pool").video_percent, 50.0);
    EXPECT_DOUBLE_EQ(row(s.by_environment, "ocean").frame_percent, 50.0);
    EXPECT_DOUBLE_EQ(row(s.by_environment, "pool").box_percent, 100.0);
    EXPECT_DOUBLE_EQ(row(s.by_split, "train").video_percent, 100.0);
}

TEST(SplitSummaryTest, ThreeTrainOneTest) {
    const std::vector<VideoManifest> m{manifest("a", 10, "pool", "train"), manifest("b", 20, "pool", "train"),
                                       manifest("c", 30, "pool", "train"), manifest("d", 40, "pool", "test")};
    const auto s = split_summary(m, {});
    EXPECT_DOUBLE_EQ(row(s.by_split, "train").video_percent, 75.0);
    EXPECT_DOUBLE_EQ(row(s.by_split, "test").video_percent, 25.0);
    EXPECT_DOUBLE_EQ(row(s.by_split, "train").frame_percent, 60.0);
    EXPECT_DOUBLE_EQ(row(s.by_split, "test").frame_percent, 40.0);
    EXPECT_EQ(row(s.by_split, "train").frames, 60u);
}

TEST(SplitSummaryTest, UntaggedRow) {
    const std::vector<VideoManifest> m{manifest("a", 5, std::nullopt, std::nullopt)};
    const auto s = split_summary(m, {});
    ASSERT_EQ(s.by_split.size(), 1u);
    EXPECT_EQ(s.by_split[0].tag, "untagged");
    EXPECT_EQ(s.by_environment[0].tag, "untagged");
    EXPECT_DOUBLE_EQ(s.by_split[0].video_percent, 100.0);
}

TEST(SplitSummaryTest, MissingVideosAreListed) {
    const std::vector<VideoManifest> m{manifest("a", 5, "pool", "train")};
    const std::vector<GroundTruthFrame> frames{gt({}, 0, "x"), gt({}, 0, "y"), gt({}, 0, "a")};
    try {
        split_summary(m, frames);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("x"), std::string::npos);
        EXPECT_NE(what.find("y"), std::string::npos);
    }
}
