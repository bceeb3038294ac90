#include "vdeval/matching.hpp"

#include "support/oracles.hpp"
#include "support/synth.hpp"

#include <gtest/gtest.h>

using namespace vdeval;

namespace {

Detection det(double conf, const Box& b, std::uint64_t index = 0) { return {"v", index, "diver", conf, b}; }

GroundTruthFrame gt(std::vector<Box> boxes, std::uint64_t index = 0) {
    GroundTruthFrame f{"v", index, {}};
    for (const auto& b : boxes) f.objects.push_back({"diver", b});
    return f;
}

// Box sharing y extent with `g` whose IOU with it is `target`, shifted right.
Box shifted_to_iou(const Box& g, double target) {
    // Same size, shifted by s: IOU = (w - s) / (w + s).
    const double w = g.width();
    const double s = w * (1 - target) / (1 + target);
    return {g.x_min + s, g.y_min, g.x_max + s, g.y_max};
}

std::size_t optimal_tp(const std::vector<Detection>& dets, const GroundTruthFrame& f, double match_iou,
                       double conf) {
    std::vector<Detection> kept;
    for (const auto& d : dets) {
        if (d.confidence >= conf) kept.push_back(d);
    }
    return oracle::exhaustive_assignment(kept.size(), f.objects.size(), [&](std::size_t i, std::size_t j) {
               if (kept[i].object_class != f.objects[j].object_class) return -1.0;
               const double v = oracle::overlap(kept[i].box, f.objects[j].box);
               return v > 0 && v >= match_iou ? v : -1.0;
           })
        .count;
}

}  // namespace

TEST(MatchFrame, ExactDetection) {
    const Box b{0.1, 0.1, 0.3, 0.3};
    const std::vector<Detection> dets{det(0.9, b)};
    const auto r = match_frame(dets, gt({b}), 0.5, 0.5);
    ASSERT_EQ(r.true_positives.size(), 1u);
    EXPECT_DOUBLE_EQ(r.true_positives[0].iou, 1.0);
    EXPECT_TRUE(r.false_positives.empty());
    EXPECT_TRUE(r.false_negatives.empty());
}

TEST(MatchFrame, ConfidenceBeatsIou) {
    const Box g{0.1, 0.1, 0.3, 0.3};
    const Box a = shifted_to_iou(g, 0.8);
    const Box b = shifted_to_iou(g, 0.9);
    EXPECT_NEAR(iou(a, g), 0.8, 1e-12);
    EXPECT_NEAR(iou(b, g), 0.9, 1e-12);
    const std::vector<Detection> dets{det(0.8, b), det(0.9, a)};
    const auto r = match_frame(dets, gt({g}), 0.5, 0.0);
    ASSERT_EQ(r.true_positives.size(), 1u);
    EXPECT_EQ(r.true_positives[0].detection_index, 1u);
    EXPECT_DOUBLE_EQ(r.true_positives[0].detection.confidence, 0.9);
    ASSERT_EQ(r.false_positives.size(), 1u);
    EXPECT_EQ(r.false_positives[0].detection_index, 0u);
}

TEST(MatchFrame, NoDetections) {
    const auto r = match_frame({}, gt({{0.1, 0.1, 0.2, 0.2}, {0.5, 0.5, 0.6, 0.6}}), 0.5, 0.5);
    EXPECT_EQ(r.false_negatives.size(), 2u);
    EXPECT_TRUE(r.true_positives.empty());
}

TEST(MatchFrame, EqualConfidencePrefersHigherIou) {
    const Box g{0.1, 0.1, 0.3, 0.3};
    const std::vector<Detection> dets{det(0.7, shifted_to_iou(g, 0.6)), det(0.7, shifted_to_iou(g, 0.95))};
    const auto r = match_frame(dets, gt({g}), 0.5, 0.0);
    ASSERT_EQ(r.true_positives.size(), 1u);
    EXPECT_EQ(r.true_positives[0].detection_index, 1u);
}

TEST(MatchFrame, ConfidenceThresholdDiscards) {
    const Box g{0.1, 0.1, 0.3, 0.3};
    const std::vector<Detection> dets{det(0.4, g)};
    const auto r = match_frame(dets, gt({g}), 0.5, 0.5);
    EXPECT_TRUE(r.true_positives.empty());
    EXPECT_TRUE(r.false_positives.empty());
    EXPECT_EQ(r.false_negatives.size(), 1u);
    EXPECT_DOUBLE_EQ(r.conf_threshold, 0.5);
}

TEST(MatchFrame, ClassMismatchIsFalsePositive) {
    const Box g{0.1, 0.1, 0.3, 0.3};
    std::vector<Detection> dets{det(0.9, g)};
    dets[0].object_class = "rov";
    const auto r = match_frame(dets, gt({g}), 0.5, 0.5);
    EXPECT_EQ(r.false_positives.size(), 1u);
    EXPECT_EQ(r.false_negatives.size(), 1u);
}

TEST(MatchFrame, ZeroMatchThresholdStillNeedsOverlap) {
    const std::vector<Detection> dets{det(0.9, {0.5, 0.5, 0.6, 0.6})};
    const auto r = match_frame(dets, gt({{0.1, 0.1, 0.2, 0.2}}), 0.0, 0.0);
    EXPECT_TRUE(r.true_positives.empty());
    EXPECT_EQ(r.false_positives.size(), 1u);
}

TEST(MatchFrame, Errors) {
    const Box g{0.1, 0.1, 0.3, 0.3};
    const std::vector<Detection> other_frame{det(0.9, g, 3)};
    EXPECT_THROW(match_frame(other_frame, gt({g}), 0.5, 0.5), ValidationError);
    std::vector<Detection> other_video{det(0.9, g)};
    other_video[0].video_id = "w";
    EXPECT_THROW(match_frame(other_video, gt({g}), 0.5, 0.5), ValidationError);
    EXPECT_THROW(match_frame({}, gt({g}), 1.5, 0.5), ValidationError);
    EXPECT_THROW(match_frame({}, gt({g}), 0.5, -0.1), ValidationError);
}

TEST(MatchFrame, GreedyCanFindFewerThanOptimal) {
    // The confident detection sits on both objects and takes its favourite,
    // leaving the second detection nothing above threshold.
    const GroundTruthFrame f = gt({{0.30, 0.0, 0.40, 0.1}, {0.33, 0.0, 0.43, 0.1}});
    const std::vector<Detection> dets{det(0.9, {0.31, 0.0, 0.41, 0.1}), det(0.8, {0.27, 0.0, 0.37, 0.1})};
    EXPECT_EQ(match_frame(dets, f, 0.5, 0.0).true_positives.size(), 1u);
    EXPECT_EQ(optimal_tp(dets, f, 0.5, 0.0), 2u);
}

TEST(MatchFrame, ConservationOnFuzzedFrames) {
    synth::Rng rng(21);
    for (int i = 0; i < 3000; ++i) {
        const auto s = synth::random_stream(rng, 6, 8);
        const double match_iou = synth::uniform(rng, 0.0, 1.0);
        const double conf = synth::uniform(rng, 0.0, 1.0);
        for (const auto& f : s.frames) {
            std::vector<Detection> dets;
            for (const auto& d : s.detections) {
                if (d.frame_index == f.frame_index) dets.push_back(d);
            }
            std::size_t admitted = 0;
            for (const auto& d : dets) admitted += d.confidence >= conf ? 1 : 0;
            const auto r = match_frame(dets, f, match_iou, conf);
            EXPECT_EQ(r.true_positives.size() + r.false_positives.size(), admitted);
            EXPECT_EQ(r.true_positives.size() + r.false_negatives.size(), f.objects.size());
            for (const auto& tp : r.true_positives) {
                EXPECT_GE(tp.iou, match_iou);
                EXPECT_DOUBLE_EQ(tp.iou, iou(tp.detection.box, tp.object.box));
            }
            EXPECT_EQ(r.true_positives.size(), oracle::greedy_tp_count(dets, f.objects, match_iou, conf));
        }
    }
}

TEST(MatchFrame, GreedyMatchesExhaustiveOnSmallFrames) {
    synth::Rng rng(22);
    int frames = 0;
    for (int i = 0; i < 5000; ++i) {
        const auto s = synth::random_stream(rng, 2, 2);
        const auto& f = s.frames[0];
        if (f.objects.size() > 2) continue;
        std::vector<Detection> dets;
        for (const auto& d : s.detections) {
            if (d.frame_index == f.frame_index) dets.push_back(d);
        }
        ++frames;
        EXPECT_EQ(match_frame(dets, f, 0.5, 0.0).true_positives.size(), optimal_tp(dets, f, 0.5, 0.0));
    }
    EXPECT_GT(frames, 1000);
}

TEST(MatchFrame, LoweringConfidenceNeverLosesTruePositives) {
    synth::Rng rng(23);
    for (int i = 0; i < 1000; ++i) {
        const auto s = synth::random_stream(rng, 5, 8);
        for (const auto& f : s.frames) {
            std::vector<Detection> dets;
            for (const auto& d : s.detections) {
                if (d.frame_index == f.frame_index) dets.push_back(d);
            }
            std::size_t previous = 0;
            for (double conf = 1.0; conf >= -1e-9; conf -= 0.05) {
                const auto tp = match_frame(dets, f, 0.5, std::max(conf, 0.0)).true_positives.size();
                EXPECT_GE(tp, previous);
                previous = tp;
            }
        }
    }
}

TEST(MatchAll, UnknownFramesAndOrdering) {
    const Box b{0.1, 0.1, 0.3, 0.3};
    const std::vector<GroundTruthFrame> frames{gt({b}, 2), gt({b}, 1)};
    const std::vector<Detection> dets{det(0.9, b, 5), det(0.9, b, 1)};
    const auto r = match_all(dets, frames, 0.5, 0.5);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0].frame_index, 1u);
    EXPECT_EQ(r[0].true_positives.size(), 1u);
    EXPECT_EQ(r[1].frame_index, 2u);
    EXPECT_EQ(r[1].false_negatives.size(), 1u);
    EXPECT_EQ(r[2].frame_index, 5u);
    EXPECT_EQ(r[2].false_positives.size(), 1u);
    EXPECT_EQ(r[2].false_positives[0].detection_index, 0u);
}

TEST(MatchAll, DuplicateFrameIsAnError) {
    const Box b{0.1, 0.1, 0.3, 0.3};
    const std::vector<GroundTruthFrame> frames{gt({b}, 2), gt({b}, 2)};
    EXPECT_THROW(match_all({}, frames, 0.5, 0.5), ValidationError);
}
