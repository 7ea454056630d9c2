#include "klevel/arrangement.hpp"
#include "klevel/geometry.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_support.hpp"

namespace {

using klevel::Plane;
using klevel::PlaneList;
using klevel::Point3;
using klevel::Rational;
using ktest::make_plane;

TEST(IntersectPair, AxisAlignedExamples) {
    // z=0 with z=x meets along the y-axis.
    auto l = klevel::line_of(make_plane(0, 0, 0), make_plane(1, 0, 0), 0, 1);
    EXPECT_EQ(l.origin, (Point3{Rational(0), Rational(0), Rational(0)}));
    EXPECT_EQ(l.dx, Rational(0));
    EXPECT_EQ(l.dy, Rational(1));
    EXPECT_EQ(l.dz, Rational(0));

    // z=x with z=y meets along x=y=z.
    auto m = klevel::line_of(make_plane(1, 0, 0), make_plane(0, 1, 0), 0, 1);
    EXPECT_EQ(m.origin, (Point3{Rational(0), Rational(0), Rational(0)}));
    EXPECT_EQ(m.dx, Rational(1));
    EXPECT_EQ(m.dy, Rational(1));
    EXPECT_EQ(m.dz, Rational(1));
}

TEST(IntersectPair, SubstitutionOracle) {
    Plane p = make_plane(2, 3, 1);  // z = 2x + 3y + 1
    Plane q = make_plane(1, -1, 2); // z = x - y + 2
    auto l = klevel::line_of(p, q, 0, 1);
    for (long t : {0L, 1L, -3L, 17L}) {
        Point3 pt = l.at(Rational(t));
        EXPECT_EQ(klevel::plane_eval(p, pt.x, pt.y), pt.z);
        EXPECT_EQ(klevel::plane_eval(q, pt.x, pt.y), pt.z);
    }
    EXPECT_THROW(klevel::line_of(make_plane(1, 0, 0), make_plane(1, 0, 5), 0, 1),
                 klevel::ParallelPlanesError);
}

TEST(IntersectPair, CanonicalParametrizationIsDeterministic) {
    Plane p = make_plane(-7, 4, 3), q = make_plane(5, -2, 1);
    auto l1 = klevel::line_of(p, q);
    auto l2 = klevel::line_of(q, p); // order of the pair must not matter
    EXPECT_EQ(l1.origin, l2.origin);
    EXPECT_EQ(l1.dx, l2.dx);
    EXPECT_EQ(l1.dy, l2.dy);
    EXPECT_EQ(l1.dz, l2.dz);
    EXPECT_TRUE(l1.dx == Rational(1) || (l1.dx == Rational(0) && l1.dy == Rational(1)));
}

TEST(IntersectTriple, Examples) {
    auto p0 = klevel::triple_point(make_plane(0, 0, 0), make_plane(1, 0, 0), make_plane(0, 1, 0));
    ASSERT_TRUE(p0.has_value());
    EXPECT_EQ(*p0, (Point3{Rational(0), Rational(0), Rational(0)}));

    auto p1 = klevel::triple_point(make_plane(0, 0, 1), make_plane(1, 0, 0), make_plane(0, 1, 0));
    ASSERT_TRUE(p1.has_value());
    EXPECT_EQ(*p1, (Point3{Rational(1), Rational(1), Rational(1)}));
}

TEST(IntersectTriple, ResidualOracleOnRandomTriples) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coeff(-20, 20);
    int produced = 0;
    while (produced < 200) {
        Plane p = make_plane(coeff(rng), coeff(rng), coeff(rng));
        Plane q = make_plane(coeff(rng), coeff(rng), coeff(rng));
        Plane r = make_plane(coeff(rng), coeff(rng), coeff(rng));
        auto pt = klevel::triple_point(p, q, r);
        if (!pt) continue;
        ++produced;
        for (const Plane& pl : {p, q, r})
            EXPECT_EQ(klevel::plane_eval(pl, pt->x, pt->y), pt->z);
    }
}

TEST(IntersectTriple, PermutationInvariant) {
    auto arr = ktest::moment_arrangement(6);
    std::array<int, 3> t{1, 3, 5};
    Point3 base = klevel::intersect_triple(arr, t[0], t[1], t[2]);
    std::sort(t.begin(), t.end());
    do {
        EXPECT_EQ(klevel::intersect_triple(arr, t[0], t[1], t[2]), base);
    } while (std::next_permutation(t.begin(), t.end()));
}

TEST(Level, Examples) {
    PlaneList planes{make_plane(0, 0, 0), make_plane(1, 0, 0), make_plane(0, 1, 0)};
    EXPECT_EQ(klevel::level(planes, Point3{Rational(0), Rational(0), Rational(1)}), 3);
    EXPECT_EQ(klevel::level(planes, Point3{Rational(0), Rational(0), Rational(0)}), 0);
    EXPECT_EQ(klevel::level(planes, Point3{Rational(0), Rational(0), Rational(-1)}), 0);
}

TEST(Level, VertexLevelsPartitionTriples) {
    auto arr = ktest::moment_arrangement(8);
    const int n = arr.size();
    std::vector<long long> histogram(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                int lv = klevel::level(arr, klevel::intersect_triple(arr, i, j, k));
                ASSERT_GE(lv, 0);
                ASSERT_LE(lv, n - 3); // defining planes never count
                ++histogram[static_cast<std::size_t>(lv)];
            }
    long long total = 0;
    for (long long h : histogram) total += h;
    EXPECT_EQ(total, klevel::choose3(n));
}

TEST(Validate, ParallelPlanesReported) {
    auto result = klevel::validate({make_plane(1, 0, 0), make_plane(1, 0, 1)});
    EXPECT_FALSE(result.ok());
    ASSERT_TRUE(result.report.has(klevel::Violation::ParallelPlanes));
    const auto& issue = result.report.issues.front();
    EXPECT_EQ(issue.witness, (std::vector<int>{0, 1}));
}

TEST(Validate, IdenticalPlanesReported) {
    auto result = klevel::validate({make_plane(2, 3, 4), make_plane(2, 3, 4)});
    EXPECT_FALSE(result.ok());
    EXPECT_TRUE(result.report.has(klevel::Violation::IdenticalPlanes));
}

TEST(Validate, FourConcurrentReported) {
    auto result = klevel::validate(
        {make_plane(0, 0, 0), make_plane(1, 0, 0), make_plane(0, 1, 0), make_plane(1, 1, 0)});
    EXPECT_FALSE(result.ok());
    bool found = false;
    for (const auto& issue : result.report.issues)
        if (issue.kind == klevel::Violation::FourConcurrent &&
            issue.witness == std::vector<int>{0, 1, 2, 3})
            found = true;
    EXPECT_TRUE(found) << "four planes through the origin must be flagged";
}

TEST(Validate, DegenerateConditionsEachReported) {
    // Duplicate z-intercepts.
    auto dup = klevel::validate({make_plane(1, 2, 5), make_plane(2, 3, 5)});
    EXPECT_TRUE(dup.report.has(klevel::Violation::DuplicateZIntercept));

    // Projection of the intersection line parallel to the y-axis (equal b).
    auto ypar = klevel::validate({make_plane(1, 2, 0), make_plane(2, 2, 1)});
    EXPECT_TRUE(ypar.report.has(klevel::Violation::YParallelProjection));

    // Two disjoint pairs with parallel projected lines.
    auto proj = klevel::validate({make_plane(0, 0, 0), make_plane(1, 1, 1), make_plane(5, 3, 2),
                                  make_plane(6, 4, 9)});
    EXPECT_TRUE(proj.report.has(klevel::Violation::ParallelProjections));

    // Line of planes 0,1 parallel to plane 2 but not inside it.
    auto par = klevel::validate({make_plane(0, 0, 0), make_plane(1, 1, 0), make_plane(2, 2, 7)});
    EXPECT_TRUE(par.report.has(klevel::Violation::LineParallelToPlane));

    // Three planes through a common line (z = 0 at y-free pencil).
    auto share = klevel::validate({make_plane(0, 1, 0), make_plane(1, 3, 0), make_plane(2, 5, 0)});
    EXPECT_TRUE(share.report.has(klevel::Violation::ThreeShareLine));
}

TEST(Validate, MomentCurveFamilyIsValid) {
    for (int n : {1, 2, 3, 5, 8, 12}) {
        auto result = klevel::validate(ktest::moment_planes(ktest::sidon_params(n)));
        EXPECT_TRUE(result.ok()) << "n=" << n;
        if (result.ok()) {
            const auto& cert = result.arrangement->certificate();
            EXPECT_TRUE(cert.no_identical && cert.no_parallel && cert.distinct_intercepts &&
                        cert.no_y_parallel_projection && cert.distinct_projected_slopes &&
                        cert.no_line_parallel_to_plane && cert.no_three_share_line &&
                        cert.no_four_concurrent);
        }
    }
}

} // namespace
