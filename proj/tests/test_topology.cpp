#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "test_curves.hpp"
#include "twocenter/topology.hpp"

using namespace twocenter;
using test_curves::kPi;

namespace {

std::multiset<int> face_windings(const Arrangement& arr) {
    std::multiset<int> out;
    for (const auto& face : arr.faces) out.insert(face.winding);
    return out;
}

}  // namespace

TEST_CASE("winding_number basics") {
    const ClosedCurve circle = test_curves::circle({0, 0}, 1.0);
    CHECK(winding_number(circle, {0, 0}) == 1);
    CHECK(winding_number(circle, {0.4, -0.3}) == 1);
    CHECK(winding_number(circle, {2.5, 0.1}) == 0);
    CHECK(winding_number(circle, {-3.0, 4.0}) == 0);
    const ClosedCurve cw = test_curves::circle({0, 0}, 1.0, 256, false);
    CHECK(winding_number(cw, {0, 0}) == -1);
    CHECK_THROWS_AS(winding_number(circle, {1.0, 0.0}), PointOnCurve);
}

TEST_CASE("find_double_points: embedded, figure eight, triple point") {
    CHECK(find_double_points(test_curves::circle({0, 0}, 1.0)).empty());

    const auto doubles = find_double_points(test_curves::figure_eight());
    REQUIRE(doubles.size() == 1);
    CHECK(norm(doubles[0].position) < 1e-6);
    CHECK(doubles[0].angle > 0.1);
    CHECK(doubles[0].s1 < doubles[0].s2);

    CHECK_THROWS_AS(find_double_points(test_curves::triple_point_star()), NonGenericCurve);
}

TEST_CASE("build_arrangement: circle faces") {
    const ClosedCurve circle = test_curves::circle({0.3, -0.2}, 1.3);
    const Arrangement arr = build_arrangement(circle, {});
    REQUIRE(arr.faces.size() == 2);
    CHECK(face_windings(arr) == std::multiset<int>{0, 1});
    const ClosedCurve cw = test_curves::circle({0.3, -0.2}, 1.3, 256, false);
    CHECK(face_windings(build_arrangement(cw, {})) == std::multiset<int>{-1, 0});
}

TEST_CASE("build_arrangement: figure eight") {
    const ClosedCurve eight = test_curves::figure_eight();
    const auto doubles = find_double_points(eight);
    const Arrangement arr = build_arrangement(eight, doubles);
    REQUIRE(arr.faces.size() == 3);
    CHECK(face_windings(arr) == std::multiset<int>{-1, 0, 1});
    CHECK(double_point_index(arr, 0) == HalfInteger::from_int(0));
    CHECK(viro_jplus(arr) == 0);
}

TEST_CASE("limacon: sectors 2,1,1,0 give index 1 and J+ = -2") {
    const ClosedCurve curve = test_curves::limacon();
    const auto doubles = find_double_points(curve);
    REQUIRE(doubles.size() == 1);
    const Arrangement arr = build_arrangement(curve, doubles);
    REQUIRE(arr.faces.size() == 3);
    CHECK(face_windings(arr) == std::multiset<int>{0, 1, 2});

    std::multiset<int> sector_windings;
    for (int f : arr.sectors[0]) sector_windings.insert(arr.faces[f].winding);
    CHECK(sector_windings == std::multiset<int>{0, 1, 1, 2});
    CHECK(double_point_index(arr, 0) == HalfInteger::from_int(1));
    CHECK(viro_jplus(arr) == -2);
}

TEST_CASE("adjacent faces across every edge differ by one") {
    const ClosedCurve curve = test_curves::standard_curve(4);
    const auto doubles = find_double_points(curve);
    const Arrangement arr = build_arrangement(curve, doubles);
    for (std::size_t a = 0; a < arr.arcs.size(); ++a) {
        const int left = arr.faces[arr.face_of_dart(2 * a)].winding;
        const int right = arr.faces[arr.face_of_dart(2 * a + 1)].winding;
        CHECK(left - right == 1);
    }
    // Unbounded face winding is zero and the Euler count holds.
    int unbounded = 0;
    for (const auto& face : arr.faces) unbounded += face.unbounded;
    CHECK(unbounded == 1);
    CHECK(arr.faces.size() == doubles.size() + 2);
}

TEST_CASE("Viro normalization on the standard curves") {
    CHECK(viro_jplus(test_curves::standard_curve(0)) == 0);
    CHECK(viro_jplus(test_curves::standard_curve(1)) == 0);
    CHECK(viro_jplus(test_curves::standard_curve(2)) == -2);
    CHECK(viro_jplus(test_curves::standard_curve(3)) == -4);
    CHECK(viro_jplus(test_curves::standard_curve(4)) == -6);
    CHECK(viro_jplus(test_curves::standard_curve(5)) == -8);
    CHECK(viro_jplus(test_curves::standard_curve(6)) == -10);
}

TEST_CASE("property: resampling invariance") {
    for (int j : {0, 2, 4}) {
        const ClosedCurve coarse = test_curves::standard_curve(j, 160);
        const ClosedCurve fine = test_curves::standard_curve(j, 320);
        const auto d1 = find_double_points(coarse);
        const auto d2 = find_double_points(fine);
        CHECK(d1.size() == d2.size());
        const Arrangement a1 = build_arrangement(coarse, d1);
        const Arrangement a2 = build_arrangement(fine, d2);
        CHECK(face_windings(a1) == face_windings(a2));
        CHECK(viro_jplus(a1) == viro_jplus(a2));
    }
}

TEST_CASE("property: orientation flip negates windings, preserves J+") {
    const ClosedCurve curve = test_curves::standard_curve(3);
    const ClosedCurve flipped = reversed(curve);
    const auto d1 = find_double_points(curve);
    const auto d2 = find_double_points(flipped);
    CHECK(d1.size() == d2.size());
    const Arrangement a1 = build_arrangement(curve, d1);
    const Arrangement a2 = build_arrangement(flipped, d2);
    std::multiset<int> negated;
    for (int w : face_windings(a1)) negated.insert(-w);
    CHECK(face_windings(a2) == negated);
    CHECK(viro_jplus(a1) == viro_jplus(a2));
}

TEST_CASE("property: rigid motion invariance") {
    const ClosedCurve curve = test_curves::limacon();
    const ClosedCurve moved =
        test_curves::rotated(test_curves::translated(curve, {1.7, -2.4}), 0.83);
    const auto d1 = find_double_points(curve);
    const auto d2 = find_double_points(moved);
    CHECK(d1.size() == d2.size());
    CHECK(face_windings(build_arrangement(curve, d1)) ==
          face_windings(build_arrangement(moved, d2)));
    CHECK(viro_jplus(curve) == viro_jplus(moved));
}

TEST_CASE("exclusion zones drop clusters near given points") {
    const ClosedCurve eight = test_curves::figure_eight();
    IntersectOptions opts;
    opts.exclude_points = {Vec2{0, 0}};
    opts.exclude_radius = 1e-3;
    CHECK(find_double_points(eight, opts).empty());
}
