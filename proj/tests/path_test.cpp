#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ucf/errors.hpp"
#include "ucf/path.hpp"

using namespace ucf;

TEST(PathPointAt, SegmentExamples) {
    const Path p = make_segment_path({0, 0}, {10, 0});
    EXPECT_NEAR(path_point_at(p, 0.5).x, 5.0, 1e-12);
    EXPECT_EQ(path_point_at(p, 1.0), (Point2{10, 0}));
    EXPECT_EQ(path_point_at(p, 0.0), (Point2{0, 0}));
    EXPECT_THROW(path_point_at(p, 1.5), InvalidInput);
    EXPECT_THROW(path_point_at(p, -0.1), InvalidInput);
}

TEST(PathPointAt, QuarterArcMidpoint) {
    const Path p = make_arc_path(Circle{{0, 0}, 2.0}, {2, 0}, {0, 2}, +1);
    const Point2 mid = path_point_at(p, 0.5);
    EXPECT_NEAR(mid.x, 1.4142136, 1e-7);
    EXPECT_NEAR(mid.y, 1.4142136, 1e-7);
    EXPECT_NEAR(p.total_length, std::numbers::pi, 1e-12);
    EXPECT_TRUE(is_well_formed(p));
    // Clockwise the long way round.
    EXPECT_NEAR(make_arc_path(Circle{{0, 0}, 2.0}, {2, 0}, {0, 2}, -1).total_length, 3.0 * std::numbers::pi, 1e-12);
}

TEST(PathPointAt, LipschitzInT) {
    const auto slide = make_obstacle_slide({-5, 0.2}, {5, -0.3}, {0, 0}, +1);
    ASSERT_TRUE(slide);
    for (int k = 0; k < 200; ++k) {
        const double t1 = k / 200.0, t2 = (k + 1) / 200.0;
        EXPECT_LE(distance(path_point_at(*slide, t1), path_point_at(*slide, t2)),
                  (t2 - t1) * slide->total_length + 1e-9);
    }
}

TEST(ObstacleSlide, WrapsOnRadiusTwoCircle) {
    const Point2 o{0, 0};
    for (int side : {+1, -1}) {
        const auto p = make_obstacle_slide({-5, 0.5}, {6, 1.0}, o, side);
        ASSERT_TRUE(p);
        EXPECT_EQ(p->kind, PathKind::ObstacleSlide);
        EXPECT_TRUE(is_well_formed(*p));
        EXPECT_EQ(p->end, (Point2{6, 1.0}));
        EXPECT_NEAR(p->total_length, oracle::slide_length({-5, 0.5}, {6, 1.0}, o, 2.0, side), 1e-9);
        int arcs = 0;
        for (const auto& piece : p->pieces)
            if (const auto* a = std::get_if<ArcPiece>(&piece)) {
                ++arcs;
                EXPECT_NEAR(a->radius, 2.0, 1e-12);
                EXPECT_EQ(a->center, o);
            }
        EXPECT_EQ(arcs, 1);
        EXPECT_NEAR(path_point_clearance(*p, o), 2.0, 1e-9);
    }
}

TEST(ObstacleSlide, CollinearSidesAreMirrorImages) {
    const auto left = make_obstacle_slide({0, -5}, {0, 5}, {0, 0}, +1);
    const auto right = make_obstacle_slide({0, -5}, {0, 5}, {0, 0}, -1);
    ASSERT_TRUE(left && right);
    EXPECT_NEAR(left->total_length, right->total_length, 1e-12);
    const Point2 ml = path_point_at(*left, 0.5), mr = path_point_at(*right, 0.5);
    EXPECT_NEAR(ml.y, mr.y, 1e-9);
    EXPECT_NEAR(ml.x, -mr.x, 1e-9);
}

TEST(ObstacleSlide, EndpointInsideWrapIsRejected) {
    EXPECT_FALSE(make_obstacle_slide({0, 1.5}, {5, 5}, {0, 0}, +1));
}

TEST(PathClearance, SegmentAgainstPoint) {
    const Path p = make_segment_path({0, 0}, {10, 0});
    EXPECT_NEAR(path_point_clearance(p, {5, 3}), 3.0, 1e-12);
    EXPECT_NEAR(path_point_clearance(p, {13, 4}), 5.0, 1e-12);
}

TEST(PathClearance, PathPairLowerBound) {
    const Path a = make_segment_path({0, 0}, {10, 0});
    const Path b = make_segment_path({5, -5}, {5, 5});
    EXPECT_NEAR(path_path_clearance(a, b), 0.0, 1e-12);
    const Path arc = make_arc_path(Circle{{0, 0}, 4.0}, {4, 0}, {0, 4}, +1);
    const Path far = make_segment_path({10, 10}, {12, 10});
    const double bound = path_path_clearance(arc, far);
    double exact = 1e9;
    for (int k = 0; k <= 4000; ++k) exact = std::min(exact, path_point_clearance(far, path_point_at(arc, k / 4000.0)));
    EXPECT_LE(bound, exact + 1e-12);
    EXPECT_GE(bound, exact - 0.05);
}

TEST(TransformPath, MirrorRoundTrip) {
    const auto p = make_obstacle_slide({-4, 1}, {4, 2}, {0, 0.5}, -1);
    ASSERT_TRUE(p);
    const Path there = transform_path(*p, -1.0, {3, -2});
    const Path back = transform_path(transform_path(there, 1.0, {-3, 2}), -1.0, {0, 0});
    EXPECT_TRUE(is_well_formed(there));
    for (int k = 0; k <= 20; ++k) {
        const Point2 u = path_point_at(*p, k / 20.0), v = path_point_at(back, k / 20.0);
        EXPECT_NEAR(u.x, v.x, 1e-9);
        EXPECT_NEAR(u.y, v.y, 1e-9);
    }
}
