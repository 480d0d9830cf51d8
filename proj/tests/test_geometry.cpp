#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "proxim/distance.hpp"
#include "proxim/point.hpp"
#include "proxim/sampling.hpp"
#include "proxim/sets.hpp"

using namespace proxim;

namespace {

Point pt(std::vector<double> c, NormTag n = NormTag::euclidean()) {
    return make_point(std::move(c), n);
}

}  // namespace

TEST(NormTag, FactoriesAndValidation) {
    EXPECT_DOUBLE_EQ(NormTag::l1().p, 1.0);
    EXPECT_DOUBLE_EQ(NormTag::euclidean().p, 2.0);
    EXPECT_TRUE(NormTag::sup().is_sup());
    EXPECT_FALSE(NormTag::lp(3.0).is_sup());
    EXPECT_THROW(NormTag::lp(0.5), ConfigError);
    EXPECT_THROW(NormTag::lp(std::nan("")), ConfigError);
    EXPECT_TRUE(NormTag::lp(2.0) == NormTag::euclidean());
    EXPECT_TRUE(NormTag::lp(2.0) != NormTag::sup());
}

TEST(Point, Validation) {
    EXPECT_THROW(make_point({}, NormTag::euclidean()), DimensionError);
    EXPECT_THROW(make_point({1.0, std::nan("")}, NormTag::euclidean()), DomainError);
    EXPECT_THROW(make_point({std::numeric_limits<double>::infinity()}, NormTag::euclidean()),
                 DomainError);
    EXPECT_EQ(pt({1.0, 2.0}).dim(), 2u);
}

TEST(Point, DistanceKnownValues) {
    EXPECT_DOUBLE_EQ(distance(pt({0, 0}, NormTag::l1()), pt({3, -4}, NormTag::l1())), 7.0);
    EXPECT_DOUBLE_EQ(distance(pt({0, 0}), pt({3, -4})), 5.0);
    EXPECT_DOUBLE_EQ(distance(pt({0, 0}, NormTag::sup()), pt({3, -4}, NormTag::sup())), 4.0);
    // p = 3: (|1|^3 + |2|^3)^(1/3) = 9^(1/3)
    EXPECT_NEAR(distance(pt({0, 0}, NormTag::lp(3)), pt({1, 2}, NormTag::lp(3))), std::cbrt(9.0),
                1e-14);
    EXPECT_DOUBLE_EQ(distance(pt({1.5, -2.0}), pt({1.5, -2.0})), 0.0);
}

TEST(Point, DistanceRejectsIncompatibleOperands) {
    EXPECT_THROW(distance(pt({1.0}), pt({1.0, 2.0})), DimensionError);
    EXPECT_THROW(distance(pt({1.0}), pt({1.0}, NormTag::sup())), DimensionError);
}

TEST(Point, TriangleInequalityOnSampledTriples) {
    const auto box = make_box({-2, -2, -2}, {2, 2, 2}, NormTag::euclidean());
    for (const NormTag norm : {NormTag::l1(), NormTag::euclidean(), NormTag::lp(3.5), NormTag::sup()}) {
        HaltonSampler halton(9);
        for (int i = 0; i < 500; ++i) {
            const auto t = halton.next();
            auto take = [&](std::size_t off) {
                return pt({-2 + 4 * t[off], -2 + 4 * t[off + 1], -2 + 4 * t[off + 2]}, norm);
            };
            const Point x = take(0), y = take(3), z = take(6);
            EXPECT_LE(distance(x, z), distance(x, y) + distance(y, z) + 1e-12);
            EXPECT_NEAR(distance(x, y), distance(y, x), 1e-15);
        }
    }
}

TEST(Sets, FactoryValidation) {
    EXPECT_THROW(make_interval(2.0, 1.0, NormTag::euclidean()), DomainError);
    EXPECT_THROW(make_box({0.0}, {1.0, 2.0}, NormTag::euclidean()), DimensionError);
    EXPECT_THROW(make_box({}, {}, NormTag::euclidean()), DimensionError);
    EXPECT_THROW(make_box({0.0}, {std::nan("")}, NormTag::euclidean()), DomainError);
    EXPECT_THROW(make_cloud({}), DomainError);
    EXPECT_THROW(make_segment(pt({0, 0}), pt({1.0})), DimensionError);
    EXPECT_EQ(make_interval(0, 1, NormTag::euclidean()).dim(), 1u);
    EXPECT_EQ(make_grid_box({0, 0}, {1, 1}, NormTag::sup()).dim(), 2u);
    EXPECT_TRUE(make_box({0}, {1}, NormTag::euclidean()).is_box_like());
    EXPECT_FALSE(make_cloud({pt({0.0})}).is_box_like());
}

TEST(Sets, ParamToPointCoversTheSet) {
    const auto iv = make_interval(1, 2, NormTag::euclidean());
    EXPECT_DOUBLE_EQ(param_to_point(iv, {0.0}).coords[0], 1.0);
    EXPECT_DOUBLE_EQ(param_to_point(iv, {1.0}).coords[0], 2.0);

    const auto box = make_box({0, -1}, {2, 1}, NormTag::euclidean());
    EXPECT_EQ(param_dim(box), 2u);
    const Point mid = param_to_point(box, {0.5, 0.5});
    EXPECT_DOUBLE_EQ(mid.coords[0], 1.0);
    EXPECT_DOUBLE_EQ(mid.coords[1], 0.0);

    const auto seg = make_segment(pt({0, 0}), pt({2, 4}));
    const Point half = param_to_point(seg, {0.5});
    EXPECT_DOUBLE_EQ(half.coords[0], 1.0);
    EXPECT_DOUBLE_EQ(half.coords[1], 2.0);

    const auto cloud = make_cloud({pt({0.0}), pt({5.0}), pt({9.0})});
    EXPECT_DOUBLE_EQ(param_to_point(cloud, {0.0}).coords[0], 0.0);
    EXPECT_DOUBLE_EQ(param_to_point(cloud, {0.5}).coords[0], 5.0);
    EXPECT_DOUBLE_EQ(param_to_point(cloud, {1.0}).coords[0], 9.0);

    EXPECT_THROW(param_to_point(box, {0.5}), DimensionError);
}

TEST(Sets, BoundaryPoints) {
    const auto iv = make_interval(1, 2, NormTag::euclidean());
    EXPECT_EQ(boundary_points(iv).size(), 2u);
    EXPECT_EQ(boundary_points(make_interval(1, 1, NormTag::euclidean())).size(), 1u);

    const auto box = make_box({0, 0}, {1, 1}, NormTag::euclidean());
    EXPECT_EQ(boundary_points(box).size(), 4u);
    EXPECT_EQ(boundary_points(box, 3).size(), 3u);
    EXPECT_TRUE(boundary_points(box, 0).empty());

    const auto seg = make_segment(pt({0, 0}), pt({1, 0}));
    const auto ends = boundary_points(seg);
    ASSERT_EQ(ends.size(), 2u);
    EXPECT_EQ(ends[0], pt({0, 0}));
    EXPECT_EQ(ends[1], pt({1, 0}));

    // A wide box falls back to the fixed subset: all-lo, all-hi, axis flips.
    std::vector<double> lo(25, 0.0), hi(25, 1.0);
    const auto wide = make_box(lo, hi, NormTag::sup());
    const auto corners = boundary_points(wide, 10);
    EXPECT_EQ(corners.size(), 10u);
    EXPECT_EQ(corners[0].coords, lo);
    EXPECT_EQ(corners[1].coords, hi);
}

TEST(Distance, PointToBoxIsTheClamp) {
    const auto box = make_box({0, 0}, {2, 1}, NormTag::euclidean());
    const auto inside = point_set_distance(pt({1.0, 0.5}), box);
    EXPECT_DOUBLE_EQ(inside.value, 0.0);
    EXPECT_TRUE(inside.exact);
    EXPECT_EQ(*inside.witness, pt({1.0, 0.5}));

    const auto outside = point_set_distance(pt({3.0, 3.0}), box);
    EXPECT_DOUBLE_EQ(outside.value, std::hypot(1.0, 2.0));
    EXPECT_EQ(*outside.witness, pt({2.0, 1.0}));

    const auto sup_box = make_box({0, 0}, {2, 1}, NormTag::sup());
    EXPECT_DOUBLE_EQ(point_set_distance(pt({3.0, 3.0}, NormTag::sup()), sup_box).value, 2.0);
}

TEST(Distance, PointToCloudScansMembers) {
    const auto cloud = make_cloud({pt({0, 0}), pt({4, 0}), pt({0, 3})});
    const auto r = point_set_distance(pt({3.5, 0.0}), cloud);
    EXPECT_DOUBLE_EQ(r.value, 0.5);
    EXPECT_EQ(*r.witness, pt({4, 0}));
}

TEST(Distance, PointToSegmentMatchesClosedForm) {
    const auto seg = make_segment(pt({0, 0}), pt({2, 2}));
    HaltonSampler halton(2);
    for (int i = 0; i < 200; ++i) {
        const auto t = halton.next();
        const Point x = pt({-1 + 5 * t[0], -1 + 5 * t[1]});
        const double expected = oracles::segment_distance_l2(x.coords, {0, 0}, {2, 2});
        const auto got = point_set_distance(x, seg);
        EXPECT_NEAR(got.value, expected, 1e-9);
        EXPECT_NEAR(distance(x, *got.witness), got.value, 1e-12);  // witness attains the value
    }
}

TEST(Distance, PointToSetAgreesWithGridBruteForce) {
    const auto box = make_box({-1, 0}, {1, 2}, NormTag::euclidean());
    const auto sup_box = make_box({-1, 0}, {1, 2}, NormTag::sup());
    HaltonSampler halton(2);
    for (int i = 0; i < 50; ++i) {
        const auto t = halton.next();
        const Point x = pt({-3 + 6 * t[0], -3 + 6 * t[1]});
        const double brute = oracles::grid_point_set_distance(x, box, 101);
        const double exact = point_set_distance(x, box).value;
        EXPECT_LE(exact, brute + 1e-12);
        EXPECT_LE(brute - exact, 0.05);

        const Point xs = pt({x.coords[0], x.coords[1]}, NormTag::sup());
        const double brute_s = oracles::grid_point_set_distance(xs, sup_box, 101);
        const double exact_s = point_set_distance(xs, sup_box).value;
        EXPECT_LE(exact_s, brute_s + 1e-12);
        EXPECT_LE(brute_s - exact_s, 0.05);
    }
}

TEST(Distance, Contains) {
    const auto box = make_box({0, 0}, {1, 1}, NormTag::euclidean());
    EXPECT_TRUE(contains(box, pt({0.5, 0.5})));
    EXPECT_TRUE(contains(box, pt({1.0 + 1e-10, 0.5})));
    EXPECT_FALSE(contains(box, pt({1.1, 0.5})));
    const auto seg = make_segment(pt({0, 0}), pt({1, 1}));
    EXPECT_TRUE(contains(seg, pt({0.25, 0.25})));
    EXPECT_FALSE(contains(seg, pt({0.25, 0.30})));
}

TEST(Distance, SetToSetKnownPairs) {
    const NormTag l2 = NormTag::euclidean();
    const auto r = set_distance(make_interval(1, 2, l2), make_interval(-2, -1, l2));
    EXPECT_DOUBLE_EQ(r.value, 2.0);
    EXPECT_TRUE(r.exact);
    EXPECT_DOUBLE_EQ(r.witness->coords[0], -1.0);  // witness lies in the second set

    EXPECT_DOUBLE_EQ(
        set_distance(make_box({0, 0}, {1, 1}, l2), make_box({0.5, 0.5}, {2, 2}, l2)).value, 0.0);

    // Componentwise gaps (1, 2): Euclidean sqrt(5), sup-norm 2.
    const auto a2 = make_box({0, 0}, {1, 1}, l2);
    const auto b2 = make_box({2, 3}, {4, 5}, l2);
    EXPECT_DOUBLE_EQ(set_distance(a2, b2).value, std::sqrt(5.0));
    const auto as = make_box({0, 0}, {1, 1}, NormTag::sup());
    const auto bs = make_box({2, 3}, {4, 5}, NormTag::sup());
    EXPECT_DOUBLE_EQ(set_distance(as, bs).value, 2.0);

    const auto c1 = make_cloud({pt({0, 0}), pt({10, 0})});
    const auto c2 = make_cloud({pt({3, 4}), pt({11, 0})});
    EXPECT_DOUBLE_EQ(set_distance(c1, c2).value, 1.0);
}

TEST(Distance, SetToSetWithSegments) {
    // Touching perpendicular segments meet at the origin.
    const NormTag sup = NormTag::sup();
    const auto g = make_segment(pt({0, 0}, sup), pt({0, 1}, sup));
    const auto h = make_segment(pt({0, 0}, sup), pt({1, 0}, sup));
    EXPECT_NEAR(set_distance(g, h).value, 0.0, 1e-9);

    // Parallel unit segments one apart.
    const auto p = make_segment(pt({0, 0}), pt({1, 0}));
    const auto q = make_segment(pt({0, 1}), pt({1, 1}));
    EXPECT_NEAR(set_distance(p, q).value, 1.0, 1e-9);

    // Segment against a box.
    const auto box = make_box({0, 2}, {1, 3}, NormTag::euclidean());
    EXPECT_NEAR(set_distance(p, box).value, 2.0, 1e-9);
    EXPECT_NEAR(set_distance(box, p).value, 2.0, 1e-9);

    // Brute-force cross-check on a skew pair.
    const auto s1 = make_segment(pt({0, 0}), pt({2, 1}));
    const auto s2 = make_segment(pt({0, 2}), pt({3, 1.2}));
    const auto got = set_distance(s1, s2);
    const double brute = oracles::grid_set_distance(s1, s2, 401);
    EXPECT_LE(got.value, brute + 1e-9);
    EXPECT_LE(brute - got.value, 0.02);
}

TEST(Distance, SetDistanceSymmetryOnSamples) {
    const auto shapes = std::vector<SetDescriptor>{
        make_interval(1, 2, NormTag::euclidean()),
        make_interval(-2, -1, NormTag::euclidean()),
        make_interval(-0.5, 1.5, NormTag::euclidean()),
    };
    for (const auto& a : shapes)
        for (const auto& b : shapes)
            EXPECT_NEAR(set_distance(a, b).value, set_distance(b, a).value, 1e-12);
}

TEST(Distance, ProjectCandidatesExposeSupNormTies) {
    // Sup norm: every point of the top edge within reach attains the distance.
    const auto box = make_box({0, 0}, {1, 1}, NormTag::sup());
    const Point x = pt({0.5, 2.0}, NormTag::sup());
    const auto cands = project_candidates(x, box, 8);
    EXPECT_GE(cands.size(), 3u);
    for (const auto& c : cands) EXPECT_NEAR(distance(x, c), 1.0, 1e-8);

    // Euclidean projection onto a box is unique.
    const auto ebox = make_box({0, 0}, {1, 1}, NormTag::euclidean());
    const auto ecands = project_candidates(pt({0.5, 2.0}), ebox, 8);
    ASSERT_EQ(ecands.size(), 1u);
    EXPECT_EQ(ecands[0], pt({0.5, 1.0}));

    // Equidistant cloud members are both reported.
    const auto cloud = make_cloud({pt({1, 0}), pt({-1, 0}), pt({5, 5})});
    EXPECT_EQ(project_candidates(pt({0, 0}), cloud, 8).size(), 2u);

    EXPECT_THROW(project_candidates(pt({0, 0}), cloud, 0), ConfigError);
}
