#include "vdeval/error.hpp"
#include "vdeval/geometry.hpp"

#include "support/oracles.hpp"
#include "support/synth.hpp"

#include <gtest/gtest.h>

using namespace vdeval;

TEST(Iou, IdenticalBoxes) {
    const Box b{0.2, 0.3, 0.6, 0.9};
    EXPECT_DOUBLE_EQ(iou(b, b), 1.0);
}

TEST(Iou, DisjointBoxes) { EXPECT_EQ(iou({0, 0, 0.1, 0.1}, {0.5, 0.5, 0.6, 0.6}), 0.0); }

TEST(Iou, PartialOverlap) {
    // intersection 0.1 * 0.1, union 0.04 + 0.04 - 0.01
    EXPECT_NEAR(iou({0, 0, 0.2, 0.2}, {0.1, 0.1, 0.3, 0.3}), 0.01 / 0.07, 1e-12);
}

TEST(Iou, TouchingEdgesDoNotOverlap) {
    EXPECT_EQ(iou({0.1, 0.1, 0.3, 0.3}, {0.3, 0.1, 0.5, 0.3}), 0.0);
    EXPECT_EQ(iou({0.1, 0.1, 0.3, 0.3}, {0.3, 0.3, 0.5, 0.5}), 0.0);
}

TEST(Iou, PropertiesOnRandomPairs) {
    synth::Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const Box a = synth::random_box(rng, 0.01, 0.9);
        const Box b = synth::random_box(rng, 0.01, 0.9);
        const double ab = iou(a, b);
        EXPECT_EQ(ab, iou(b, a));
        EXPECT_GE(ab, 0.0);
        EXPECT_LE(ab, 1.0);
        EXPECT_LT(ab, 1.0);  // distinct random boxes
        EXPECT_EQ(iou(a, a), 1.0);
    }
}

TEST(Iou, ConvergesToRasterOracle) {
    // Cell-center sampling misplaces each edge by up to half a cell, so the
    // raster error shrinks with 1/n; a fine raster pins the analytic value.
    synth::Rng rng(5);
    double coarse = 0.0;
    double fine = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Box a = synth::random_box(rng, 0.05, 0.6);
        const Box b = synth::perturb(rng, a, 0.3);
        coarse = std::max(coarse, std::abs(iou(a, b) - oracle::raster_iou(a, b, 1000)));
        fine = std::max(fine, std::abs(iou(a, b) - oracle::raster_iou(a, b, 20000)));
    }
    EXPECT_LT(fine, 2e-3);
    EXPECT_LT(fine, coarse);
}

TEST(Iou, MatchesRasterOracleOnGridAlignedBoxes) {
    synth::Rng rng(6);
    auto snapped = [&] {
        const int x0 = synth::uniform_int(rng, 0, 900);
        const int y0 = synth::uniform_int(rng, 0, 900);
        const int w = synth::uniform_int(rng, 1, 1000 - x0);
        const int h = synth::uniform_int(rng, 1, 1000 - y0);
        return Box{x0 / 1000.0, y0 / 1000.0, (x0 + w) / 1000.0, (y0 + h) / 1000.0};
    };
    for (int i = 0; i < 200; ++i) {
        const Box a = snapped();
        const Box b = snapped();
        // Boxes that only touch share no cell center, as with the
        // closed-rectangle convention.
        EXPECT_NEAR(iou(a, b), oracle::raster_iou(a, b), 1e-9);
    }
}

TEST(Center, FullFrame) { EXPECT_EQ(center({0, 0, 1, 1}), (Point{0.5, 0.5})); }

TEST(Center, HandArithmetic) {
    const Point c = center({0.2, 0.4, 0.4, 0.8});
    EXPECT_NEAR(c.x, 0.3, 1e-15);
    EXPECT_NEAR(c.y, 0.6, 1e-15);
}

TEST(Center, MirrorReflectsCenter) {
    const Box b{0.1, 0.2, 0.35, 0.7};
    const Box mirrored{1.0 - b.x_max, b.y_min, 1.0 - b.x_min, b.y_max};
    EXPECT_NEAR(center(mirrored).x, 1.0 - center(b).x, 1e-15);
    EXPECT_EQ(center(mirrored).y, center(b).y);
}

TEST(Normalize, FullFrame) {
    EXPECT_EQ(normalize({0, 0, 640, 480}, {640, 480}), (Box{0, 0, 1, 1}));
}

TEST(Normalize, HandArithmetic) {
    const Box b = normalize({64, 48, 128, 96}, {640, 480});
    EXPECT_DOUBLE_EQ(b.x_min, 0.1);
    EXPECT_DOUBLE_EQ(b.y_min, 0.1);
    EXPECT_DOUBLE_EQ(b.x_max, 0.2);
    EXPECT_DOUBLE_EQ(b.y_max, 0.2);
}

TEST(Normalize, DoesNotClamp) {
    const Box b = normalize({-64, 0, 700, 480}, {640, 480});
    EXPECT_LT(b.x_min, 0.0);
    EXPECT_GT(b.x_max, 1.0);
    EXPECT_FALSE(is_valid(b));
}

TEST(Normalize, ZeroWidthIsRejectedWithContext) {
    try {
        normalize({0, 0, 0, 10}, {640, 480}, "clip_000003 object 1");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("clip_000003 object 1"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("degenerate"), std::string::npos);
    }
}

TEST(Normalize, InvalidFrameSize) {
    EXPECT_THROW(normalize({0, 0, 10, 10}, {0, 480}), ValidationError);
}

TEST(BoxValidity, Invariants) {
    EXPECT_TRUE(is_valid(Box{0, 0, 1, 1}));
    EXPECT_FALSE(is_valid(Box{0.5, 0.1, 0.5, 0.2}));
    EXPECT_FALSE(is_valid(Box{0.6, 0.1, 0.5, 0.2}));
    EXPECT_FALSE(is_valid(Box{-0.01, 0.1, 0.5, 0.2}));
    EXPECT_FALSE(is_valid(Box{0.1, 0.1, 0.5, 1.01}));
    EXPECT_FALSE(is_valid(Box{0.1, 0.1, std::nan(""), 0.2}));
}
