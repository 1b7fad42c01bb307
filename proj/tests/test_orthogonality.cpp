#include <bjortho/ortho.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace bjortho;

namespace {

Point random_point(std::mt19937_64& rng, size_t d, int span = 9, int maxden = 9) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, maxden);
    VecQ v(d);
    for (auto& c : v) c = Rational(num(rng), den(rng));
    return Point(std::move(v));
}

Point random_nonzero(std::mt19937_64& rng, size_t d) {
    for (;;) {
        Point p = random_point(rng, d);
        if (!is_zero(p.x)) return p;
    }
}

} // namespace

TEST_CASE("orthogonality at a prism vertex") {
    const Space s = build_prism(2);
    const Point x{Rational(1), Rational(0), Rational(1)};
    const Point y{Rational(1), Rational(2), Rational(-1)};
    CHECK(is_bj_orthogonal(s, x, y));
    CHECK(bj_oracle(s, x, y));
    CHECK_FALSE(is_bj_orthogonal(s, x, Point{Rational(1), Rational(0), Rational(1)}));
}

TEST_CASE("orthogonality between glued pyramids directions") {
    const Space s = build_glued_pyramids();
    const Point x{Rational(1), Rational(-1), Rational(1)};
    const Point y{Rational(2), Rational(3), Rational(-5)};
    CHECK(is_bj_orthogonal(s, x, y));
    CHECK(bj_oracle(s, x, y));
}

TEST_CASE("zero vector conventions") {
    const Space s = build_linf(2);
    const Point z{Rational(0), Rational(0)};
    const Point x{Rational(1), Rational(1)};
    CHECK(is_bj_orthogonal(s, z, x));
    CHECK(bj_oracle(s, z, x));
    CHECK(in_plus_set(s, z, x));
    CHECK(in_minus_set(s, z, x));
    CHECK(is_bj_orthogonal(s, x, z));
}

TEST_CASE("one-sided sets split non-orthogonal directions") {
    const Space s = build_linf(2);
    std::mt19937_64 rng(271828u);
    for (int i = 0; i < 500; ++i) {
        const Point x = random_nonzero(rng, 2);
        const Point y = random_point(rng, 2);
        const bool plus = in_plus_set(s, x, y);
        const bool minus = in_minus_set(s, x, y);
        const bool orth = is_bj_orthogonal(s, x, y);
        CHECK(orth == (plus && minus));
        CHECK((plus || minus));
    }
}

TEST_CASE("orthogonality set membership agrees with the direct test") {
    std::mt19937_64 rng(112358u);
    for (const auto* name : {"prism:2", "glued_pyramids", "polygon:6"}) {
        const Space s = build_named(name);
        for (int i = 0; i < 500; ++i) {
            const Point x = random_nonzero(rng, s.dim);
            const OrthoSet o = ortho_set(s, x);
            const Point y = random_point(rng, s.dim);
            CHECK(o.contains(y) == is_bj_orthogonal(s, x, y));
        }
    }
}

TEST_CASE("oracle and active-set route always agree") {
    std::mt19937_64 rng(161803u);
    for (const auto* name : {"linf:3", "l1:3", "bipyramid_prism:3", "euclid:3"}) {
        const Space s = build_named(name);
        for (int i = 0; i < 500; ++i) {
            const Point x = random_point(rng, s.dim);
            const Point y = random_point(rng, s.dim);
            CHECK(is_bj_orthogonal(s, x, y) == bj_oracle(s, x, y));
        }
    }
}

TEST_CASE("orthogonality is homogeneous in both arguments") {
    std::mt19937_64 rng(141421u);
    std::uniform_int_distribution<int> coeff(1, 12);
    std::uniform_int_distribution<int> flip(0, 1);
    for (const auto* name : {"linf:3", "glued_pyramids", "polygon:6"}) {
        const Space s = build_named(name);
        for (int i = 0; i < 300; ++i) {
            const Point x = random_nonzero(rng, s.dim);
            const Point y = random_point(rng, s.dim);
            const Rational a = Rational(coeff(rng), coeff(rng)) * (flip(rng) ? 1 : -1);
            const Rational b = Rational(coeff(rng), coeff(rng)) * (flip(rng) ? 1 : -1);
            CHECK(is_bj_orthogonal(s, x, y) == is_bj_orthogonal(s, a * x, b * y));
        }
    }
}

TEST_CASE("euclidean orthogonality is the inner product") {
    const Space e = build_euclid(3);
    CHECK(is_bj_orthogonal(e, Point{Rational(1), Rational(2), Rational(0)},
                           Point{Rational(-2), Rational(1), Rational(7)}));
    CHECK_FALSE(is_bj_orthogonal(e, Point{Rational(1), Rational(0), Rational(0)},
                                 Point{Rational(1), Rational(5), Rational(5)}));
}

TEST_CASE("active facets of a face point come from its vertices") {
    const Space s = build_glued_pyramids();
    std::mt19937_64 rng(424242u);
    std::uniform_int_distribution<int> num(1, 9);
    int done = 0;
    while (done < 1000) {
        // Random positive combination of one facet's vertex set stays on that face.
        std::uniform_int_distribution<size_t> pick(0, s.facets.size() - 1);
        const size_t j = pick(rng);
        VecQ acc(s.dim, Rational(0));
        std::vector<size_t> used;
        Rational total = 0;
        for (size_t i = 0; i < s.vertices.size(); ++i) {
            if (!s.incidence[i][j]) continue;
            const Rational w(num(rng), 1);
            acc = add(acc, scale(w, s.vertices[i].x));
            used.push_back(i);
            total += w;
        }
        REQUIRE(total > 0);
        const Point x(std::move(acc));
        const auto ax = norming_face(s, x).active;
        for (size_t i : used) {
            const auto av = norming_face(s, s.vertices[i]).active;
            for (size_t a : ax)
                CHECK(std::find(av.begin(), av.end(), a) != av.end());
        }
        ++done;
    }
}

TEST_CASE("normal cones at square and hexagon vertices") {
    const Space sq = build_polygon(4);
    const Space hex = build_polygon(6);
    const Space cube2 = build_linf(2);
    const auto cone = normal_cone_2d(cube2, Point{Rational(1), Rational(1)});
    // Generators are the kernel directions of the two facets at (1,1).
    CHECK(((cone.v1 == Point{Rational(1), Rational(0)} && cone.v2 == Point{Rational(0), Rational(-1)}) ||
           (cone.v1 == Point{Rational(0), Rational(-1)} && cone.v2 == Point{Rational(1), Rational(0)})));

    for (const Space* sp : {&sq, &hex, &cube2}) {
        for (size_t i : antipodal_class_reps(*sp)) {
            const Point& v = sp->vertices[i];
            const auto nc = normal_cone_2d(*sp, v);
            // Strict interior combinations are orthogonal to v and to no other class.
            const Point inside = Rational(1) * nc.v1 + Rational(2) * nc.v2;
            const Point inside2 = Rational(3) * nc.v1 + Rational(1) * nc.v2;
            for (const Point& y : {inside, inside2}) {
                CHECK(is_bj_orthogonal(*sp, v, y));
                for (size_t k : antipodal_class_reps(*sp)) {
                    if (k == i) continue;
                    CHECK_FALSE(is_bj_orthogonal(*sp, sp->vertices[k], y));
                }
            }
        }
    }
}

TEST_CASE("covers accepts the full class family and rejects singletons") {
    const Space s = build_polygon(6);
    const auto reps = antipodal_class_reps(s);
    std::vector<Point> all;
    for (size_t i : reps) all.push_back(s.vertices[i]);
    CHECK(covers(s, all).verdict == CoverageVerdict::covered);

    const auto one = covers(s, {s.vertices[0]});
    REQUIRE(one.verdict == CoverageVerdict::not_covered);
    REQUIRE(one.witness);
    CHECK_FALSE(is_bj_orthogonal(s, s.vertices[0], *one.witness));
    CHECK(one.checked_sign_vectors == 1);
}

TEST_CASE("minimal covering numbers of the catalog spaces") {
    for (size_t n : {2u, 3u, 4u, 5u}) {
        const auto cn = min_covering_number(build_polygon(2 * n));
        CHECK(cn.m == n);
        CHECK(cn.points.size() == n);
        CHECK(covers(build_polygon(2 * n), cn.points).verdict == CoverageVerdict::covered);
    }
    CHECK(min_covering_number(build_glued_pyramids()).m == 2);
    CHECK(min_covering_number(build_bipyramid_prism(4)).m == 3);
}

TEST_CASE("property pn persists upward once lost") {
    const Space glued = build_glued_pyramids();
    CHECK(has_property_pn(glued, 2).verdict == PnVerdict::lacks_pn);
    CHECK(has_property_pn(glued, 3).verdict == PnVerdict::lacks_pn);

    // The decagon keeps every level below its covering number and loses
    // everything at or above it, so the verdict flips exactly once.
    const Space dec = build_polygon(10);
    for (size_t n = 1; n <= 4; ++n)
        CHECK(has_property_pn(dec, n).verdict == PnVerdict::has_pn);
    CHECK(has_property_pn(dec, 5).verdict == PnVerdict::lacks_pn);
    CHECK(has_property_pn(dec, 6).verdict == PnVerdict::lacks_pn);
}

TEST_CASE("euclidean spaces have every pn") {
    const Space e = build_euclid(3);
    for (size_t n : {2u, 3u, 5u, 8u}) {
        const auto cert = has_property_pn(e, n);
        CHECK(cert.verdict == PnVerdict::has_pn);
    }
}

TEST_CASE("pn certificates carry verifiable data") {
    const Space s = build_polygon(8);
    const auto lost = has_property_pn(s, 4);
    REQUIRE(lost.verdict == PnVerdict::lacks_pn);
    REQUIRE(lost.covering_points.size() == 4);
    CHECK(covers(s, lost.covering_points).verdict == CoverageVerdict::covered);

    const auto kept = has_property_pn(s, 3);
    REQUIRE(kept.verdict == PnVerdict::has_pn);
    CHECK(kept.families_checked == kept.family_witnesses.size());
    for (const auto& [vidx, w] : kept.family_witnesses) {
        for (size_t i : vidx) CHECK_FALSE(is_bj_orthogonal(s, s.vertices[i], w));
    }
}
