#include <bjortho/dd.hpp>
#include <bjortho/space.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace bjortho;

namespace {

std::set<Point> as_set(const std::vector<Point>& v) { return {v.begin(), v.end()}; }

std::vector<Point> cross_polytope_points() {
    return {Point{Rational(1), Rational(0)}, Point{Rational(-1), Rational(0)},
            Point{Rational(0), Rational(1)}, Point{Rational(0), Rational(-1)}};
}

std::vector<Point> cube_points() {
    std::vector<Point> pts;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) pts.push_back(Point{Rational(sx), Rational(sy), Rational(sz)});
    return pts;
}

} // namespace

TEST_CASE("dual_description of the cross polytope") {
    const auto dd = dual_description(cross_polytope_points());
    CHECK(dd.warnings.empty());
    REQUIRE(dd.facets.size() == 4);
    REQUIRE(dd.vertices.size() == 4);
    CHECK(as_set(dd.vertices) == as_set(cross_polytope_points()));
    // Facets of the cross polytope are the sign patterns (+-1, +-1).
    std::set<std::vector<Rational>> got;
    for (const auto& f : dd.facets) got.insert(f.a);
    std::set<std::vector<Rational>> want;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1}) want.insert({Rational(sx), Rational(sy)});
    CHECK(got == want);
}

TEST_CASE("dual_description of the cube") {
    const auto dd = dual_description(cube_points());
    CHECK(dd.warnings.empty());
    CHECK(dd.facets.size() == 6);
    CHECK(dd.vertices.size() == 8);
    CHECK(as_set(dd.vertices) == as_set(cube_points()));
    // Each cube vertex lies on exactly 3 facets.
    for (const auto& row : dd.incidence)
        CHECK(std::count(row.begin(), row.end(), true) == 3);
}

TEST_CASE("dual_description round-trips a 3d bipyramid-over-cube shape") {
    auto pts = cube_points();
    pts.push_back(Point{Rational(0), Rational(0), Rational(2)});
    pts.push_back(Point{Rational(0), Rational(0), Rational(-2)});
    const auto dd = dual_description(pts);
    CHECK(dd.warnings.empty());
    CHECK(dd.vertices.size() == 10);
    CHECK(dd.facets.size() == 12);
    CHECK(as_set(dd.vertices) == as_set(pts));
    CHECK(as_set(vertex_enumeration(dd.facets)) == as_set(pts));
}

TEST_CASE("non-extreme input points are dropped with a warning") {
    auto pts = cross_polytope_points();
    pts.push_back(Point{Rational(1, 2), Rational(1, 2)});    // edge midpoint
    pts.push_back(Point{Rational(-1, 2), Rational(-1, 2)});
    const auto dd = dual_description(pts);
    CHECK(dd.vertices.size() == 4);
    REQUIRE_FALSE(dd.warnings.empty());
    bool mentioned = false;
    for (const auto& w : dd.warnings) mentioned = mentioned || w.find("not extreme") != std::string::npos;
    CHECK(mentioned);
}

TEST_CASE("duplicate input points are merged with a warning") {
    auto pts = cross_polytope_points();
    pts.push_back(pts.front());
    const auto dd = dual_description(pts);
    CHECK(dd.vertices.size() == 4);
    REQUIRE(dd.warnings.size() == 1);
    CHECK(dd.warnings[0].find("duplicate") != std::string::npos);
}

TEST_CASE("dual_description validates its input") {
    SECTION("empty") {
        CHECK_THROWS_AS(dual_description({}), std::invalid_argument);
    }
    SECTION("zero point") {
        auto pts = cross_polytope_points();
        pts.push_back(Point{Rational(0), Rational(0)});
        CHECK_THROWS_AS(dual_description(pts), std::invalid_argument);
    }
    SECTION("not symmetric under negation") {
        auto pts = cross_polytope_points();
        pts.pop_back();
        CHECK_THROWS_WITH(dual_description(pts), Catch::Matchers::ContainsSubstring("not symmetric"));
    }
    SECTION("not full-dimensional") {
        const std::vector<Point> segment{Point{Rational(1), Rational(0)}, Point{Rational(-1), Rational(0)}};
        CHECK_THROWS_WITH(dual_description(segment), Catch::Matchers::ContainsSubstring("full-dimensional"));
    }
}

TEST_CASE("vertices_of_hpolytope rejects unbounded regions") {
    HPolytope H;
    H.dim = 2;
    H.le.push_back({Functional{Rational(1), Rational(0)}, Rational(1)});   // only x <= 1
    CHECK_THROWS_WITH(vertices_of_hpolytope(H), Catch::Matchers::ContainsSubstring("unbounded"));
}

TEST_CASE("hull conversions round-trip every builder output") {
    for (const auto* name : {"polygon:4", "polygon:6", "polygon:10", "l1:2", "l1:3", "linf:2",
                             "linf:3", "prism:2", "prism:3", "glued_pyramids", "bipyramid_prism:3",
                             "bipyramid_prism:4"}) {
        const Space s = build_named(name);
        auto verts = s.vertices;
        std::sort(verts.begin(), verts.end());
        CHECK(vertex_enumeration(s.facets) == verts);
        const auto dd = dual_description(s.vertices);
        std::set<std::vector<Rational>> got, want;
        for (const auto& f : dd.facets) got.insert(f.a);
        for (const auto& f : s.facets) want.insert(f.a);
        CHECK(got == want);
        CHECK(dd.warnings.empty());
    }
}

TEST_CASE("incidence matrix marks active facets") {
    const auto dd = dual_description(cross_polytope_points());
    for (size_t i = 0; i < dd.vertices.size(); ++i)
        for (size_t j = 0; j < dd.facets.size(); ++j)
            CHECK(dd.incidence[i][j] == (dd.facets[j](dd.vertices[i]) == 1));
    // Every vertex of the square's dual lies on exactly 2 of the 4 facets.
    for (const auto& row : dd.incidence)
        CHECK(std::count(row.begin(), row.end(), true) == 2);
}
