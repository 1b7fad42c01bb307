#include <bjortho/operators.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace bjortho;

namespace {

MatQ mat(size_t r, size_t c, std::initializer_list<Rational> entries) {
    MatQ m(r, c);
    auto it = entries.begin();
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m[i][j] = *it++;
    return m;
}

Operator op(MatQ m, Space dom, Space cod, std::string label = "") {
    return Operator{std::move(m), std::move(dom), std::move(cod), std::move(label)};
}

Operator half_plane_embedding() {
    // (x, y) -> (x, y, (x+y)/2) from the cross norm into the max norm.
    return op(mat(3, 2, {Rational(1), Rational(0), Rational(0), Rational(1), Rational(1, 2), Rational(1, 2)}),
              build_l1(2), build_linf(3), "embed");
}

MatQ random_matrix(std::mt19937_64& rng, size_t r, size_t c, int span = 3, int maxden = 2) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, maxden);
    MatQ m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m[i][j] = Rational(num(rng), den(rng));
    return m;
}

std::set<std::vector<Point>> maximal_vertex_sets(const MTComplex& m) {
    std::set<std::vector<Point>> out;
    for (const auto& c : m.cells)
        if (c.maximal) out.insert(c.vertices);
    return out;
}

Point random_sphere_point(std::mt19937_64& rng, const Space& s) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    for (;;) {
        VecQ v(s.dim);
        for (auto& c : v) c = Rational(num(rng), den(rng));
        Point p{std::move(v)};
        if (is_zero(p.x)) continue;
        return (Rational(1) / norm(s, p)) * p;
    }
}

bool satisfies(const HPolytope& h, const Point& p) {
    for (const auto& c : h.le)
        if (c.f(p) > c.rhs) return false;
    for (const auto& c : h.eq)
        if (c.f(p) != c.rhs) return false;
    return true;
}

} // namespace

TEST_CASE("operator norms of small maps") {
    CHECK(op_norm_value(op(MatQ::identity(2), build_linf(2), build_linf(2))) == 1);
    CHECK(op_norm_value(op(mat(2, 2, {Rational(1), Rational(0), Rational(0), Rational(1, 2)}),
                           build_linf(2), build_linf(2))) == 1);
    CHECK(op_norm_value(half_plane_embedding()) == 1);
    CHECK(op_norm_value(op(MatQ(2, 2), build_linf(2), build_linf(2))) == 0);
}

TEST_CASE("euclidean codomain norms are reported squared") {
    MatQ half = mat(3, 3, {Rational(1, 2), Rational(0), Rational(0),
                           Rational(0), Rational(1, 2), Rational(0),
                           Rational(0), Rational(0), Rational(1, 2)});
    const Operator t = op(std::move(half), build_linf(3), build_euclid(3));
    CHECK(op_norm_is_squared(t));
    CHECK(op_norm_value(t) == Rational(3, 4));
}

TEST_CASE("euclidean domains are rejected") {
    const Operator t = op(MatQ::identity(2), build_euclid(2), build_linf(2));
    CHECK_THROWS_AS(op_norm_value(t), std::invalid_argument);
    CHECK_THROWS_AS(norm_attainment_set(t), std::invalid_argument);
}

TEST_CASE("attainment set of the identity on the max norm") {
    const Operator t = op(MatQ::identity(2), build_linf(2), build_linf(2));
    const MTComplex m = norm_attainment_set(t);
    CHECK(m.op_norm == 1);
    CHECK_FALSE(m.norm_is_squared);
    // Whole unit sphere attains: 4 edges and 4 corners.
    CHECK(m.cells.size() == 8);
    size_t maximal = 0, corners = 0;
    for (const auto& c : m.cells) {
        if (c.maximal) {
            ++maximal;
            CHECK(c.dim == 1);
            CHECK(c.vertices.size() == 2);
        } else {
            ++corners;
            CHECK(c.dim == 0);
        }
        CHECK(c.image_constant == (c.dim == 0));
    }
    CHECK(maximal == 4);
    CHECK(corners == 4);
    CHECK(mt_projective_components(t) == std::pair<size_t, size_t>{1, 1});
}

TEST_CASE("attainment set of a diagonal contraction") {
    const Operator t = op(mat(2, 2, {Rational(1), Rational(0), Rational(0), Rational(1, 2)}),
                          build_linf(2), build_linf(2));
    const MTComplex m = norm_attainment_set(t);
    const auto cells = maximal_vertex_sets(m);
    const std::vector<Point> right{Point{Rational(1), Rational(-1)}, Point{Rational(1), Rational(1)}};
    const std::vector<Point> left{Point{Rational(-1), Rational(-1)}, Point{Rational(-1), Rational(1)}};
    CHECK(cells == std::set<std::vector<Point>>{right, left});
    // Besides the two maximal edges, the corners appear as faces of them.
    CHECK(m.cells.size() == 6);
    for (const auto& c : m.cells)
        if (!c.maximal) CHECK(c.dim == 0);
    CHECK(mt_projective_components(t) == std::pair<size_t, size_t>{2, 1});
}

TEST_CASE("attainment set of the half-plane embedding is four isolated points") {
    const Operator t = half_plane_embedding();
    const MTComplex m = norm_attainment_set(t);
    std::set<Point> pts;
    for (const auto& c : m.cells) {
        CHECK(c.dim == 0);
        CHECK(c.maximal);
        REQUIRE(c.vertices.size() == 1);
        pts.insert(c.vertices[0]);
    }
    const std::set<Point> want{Point{Rational(1), Rational(0)}, Point{Rational(-1), Rational(0)},
                               Point{Rational(0), Rational(1)}, Point{Rational(0), Rational(-1)}};
    CHECK(pts == want);
    CHECK(mt_projective_components(t) == std::pair<size_t, size_t>{4, 2});
}

TEST_CASE("attains_norm matches the attainment set") {
    const Operator t = half_plane_embedding();
    const Rational n = op_norm_value(t);
    CHECK(attains_norm(t, n, Point{Rational(1), Rational(0)}));
    CHECK(attains_norm(t, n, Point{Rational(0), Rational(-1)}));
    CHECK_FALSE(attains_norm(t, n, Point{Rational(1, 2), Rational(1, 2)}));
    CHECK_FALSE(attains_norm(t, n, Point{Rational(2), Rational(0)}));   // not on the sphere
}

TEST_CASE("image classes group cells up to sign") {
    const Operator t = op(mat(3, 3, {Rational(1, 2), Rational(1, 2), Rational(0),
                                     Rational(-1, 2), Rational(1, 2), Rational(0),
                                     Rational(0), Rational(1), Rational(0)}),
                          build_linf(3), build_bipyramid_prism(4));
    const MTComplex m = norm_attainment_set(t);
    const auto rep = image_classes(t, m);
    CHECK(rep.all_cells_constant);
    REQUIRE(rep.classes.size() == 2);
    CHECK(rep.classes[0].multiplicity == 2);
    CHECK(rep.classes[1].multiplicity == 2);
    for (const auto& cl : rep.classes) CHECK(-cl.rep < cl.rep);

    const Operator id = op(MatQ::identity(2), build_linf(2), build_linf(2));
    const auto idrep = image_classes(id, norm_attainment_set(id));
    CHECK_FALSE(idrep.all_cells_constant);
    CHECK_FALSE(idrep.nonconstant_cells.empty());
}

TEST_CASE("operator orthogonality basics") {
    const Operator id = op(MatQ::identity(2), build_linf(2), build_linf(2));
    const Operator a = op(mat(2, 2, {Rational(0), Rational(1), Rational(0), Rational(0)}),
                          build_linf(2), build_linf(2), "shift");
    CHECK(op_is_bj_orthogonal(id, a));
    CHECK(op_bj_oracle(id, a));
    CHECK(op_is_bj_orthogonal(id, op(MatQ(2, 2), build_linf(2), build_linf(2))));
    CHECK_THROWS_AS(op_is_bj_orthogonal(op(MatQ(2, 2), build_linf(2), build_linf(2)), id),
                    std::invalid_argument);
    CHECK_FALSE(op_is_bj_orthogonal(id, id));
}

TEST_CASE("operator orthogonality is scale invariant") {
    std::mt19937_64 rng(55501u);
    const Space dom = build_linf(2);
    const Space cod = build_linf(2);
    int done = 0;
    while (done < 100) {
        MatQ tm = random_matrix(rng, 2, 2);
        bool nz = false;
        for (const auto& row : tm.m) nz = nz || !is_zero(row);
        if (!nz) continue;
        const MatQ am = random_matrix(rng, 2, 2);
        const Operator t = op(tm, dom, cod);
        const Operator a = op(am, dom, cod);
        MatQ t3 = tm, a57 = am;
        for (auto& row : t3.m) row = scale(Rational(3), row);
        for (auto& row : a57.m) row = scale(Rational(5, 7), row);
        CHECK(op_is_bj_orthogonal(t, a) == op_is_bj_orthogonal(op(t3, dom, cod), op(a57, dom, cod)));
        ++done;
    }
}

TEST_CASE("operator ball of maps between small spaces is itself polyhedral") {
    // Entry flattening: S -> (S00, S01, S10, S11), row-major. The functionals
    // g x v with g a codomain facet and v a domain vertex describe the unit
    // ball of the operator norm, and the norm computed facet-wise agrees
    // with op_norm_value.
    const Space dom = build_l1(2);
    const Space cod = build_linf(2);
    std::vector<Functional> ball_facets;
    for (const auto& v : dom.vertices) {
        for (const auto& g : cod.facets) {
            VecQ flat(4);
            for (size_t i = 0; i < 2; ++i)
                for (size_t j = 0; j < 2; ++j) flat[2 * i + j] = g[i] * v[j];
            ball_facets.push_back(Functional(std::move(flat)));
        }
    }
    std::sort(ball_facets.begin(), ball_facets.end());
    ball_facets.erase(std::unique(ball_facets.begin(), ball_facets.end()), ball_facets.end());
    Space opspace;
    opspace.kind = SpaceKind::polyhedral;
    opspace.dim = 4;
    opspace.facets = ball_facets;
    opspace.vertices = vertex_enumeration(ball_facets);
    opspace.incidence = incidence_matrix(opspace.vertices, opspace.facets);
    opspace.label = "operators(l1:2, linf:2)";
    CHECK(validate(opspace).empty());

    std::mt19937_64 rng(90210u);
    for (int i = 0; i < 50; ++i) {
        const MatQ s = random_matrix(rng, 2, 2, 5, 3);
        const Point flat{s[0][0], s[0][1], s[1][0], s[1][1]};
        CHECK(op_norm_value(op(s, dom, cod)) == norm(opspace, flat));
    }
}

TEST_CASE("oracle agreement through a euclidean codomain") {
    std::mt19937_64 rng(77013u);
    const Space dom = build_linf(2);
    const Space cod = build_euclid(2);
    int done = 0;
    while (done < 200) {
        MatQ tm = random_matrix(rng, 2, 2);
        bool nz = false;
        for (const auto& row : tm.m) nz = nz || !is_zero(row);
        if (!nz) continue;
        const Operator t = op(tm, dom, cod);
        const Operator a = op(random_matrix(rng, 2, 2), dom, cod);
        CHECK(op_is_bj_orthogonal(t, a) == op_bj_oracle(t, a));
        ++done;
    }
}

TEST_CASE("unit sphere samples never beat the operator norm") {
    std::mt19937_64 rng(60601u);
    std::vector<Operator> ops;
    ops.push_back(half_plane_embedding());
    ops.push_back(op(MatQ::identity(2), build_linf(2), build_linf(2)));
    ops.push_back(op(random_matrix(rng, 3, 2, 4, 3), build_l1(2), build_linf(3)));
    ops.push_back(op(random_matrix(rng, 2, 3, 4, 3), build_linf(3), build_euclid(2)));
    for (const auto& t : ops) {
        const Rational opn = op_norm_value(t);
        const bool sq = op_norm_is_squared(t);
        for (int i = 0; i < 200; ++i) {
            const Point u = random_sphere_point(rng, t.domain);
            const Point tu = apply(t, u);
            CHECK((sq ? norm_sq(t.codomain, tu) : norm(t.codomain, tu)) <= opn);
        }
    }
}

TEST_CASE("attainment matches the cell carriers pointwise") {
    std::mt19937_64 rng(31184u);
    const std::vector<Operator> ops = {
        half_plane_embedding(),
        op(MatQ::identity(2), build_linf(2), build_linf(2)),
    };
    for (const auto& t : ops) {
        const MTComplex m = norm_attainment_set(t);
        for (int i = 0; i < 200; ++i) {
            const Point u = random_sphere_point(rng, t.domain);
            bool inside = false;
            for (const auto& c : m.cells) inside = inside || satisfies(c.carrier, u);
            CHECK(attains_norm(t, m.op_norm, u) == inside);
        }
        // Convex combinations of a cell's vertices stay in the carrier and attain.
        std::uniform_int_distribution<int> wgt(1, 5);
        for (const auto& c : m.cells) {
            Point mix{VecQ(t.domain.dim)};
            Rational total = 0;
            std::vector<Rational> w;
            for (size_t k = 0; k < c.vertices.size(); ++k) {
                w.emplace_back(wgt(rng));
                total += w.back();
            }
            for (size_t k = 0; k < c.vertices.size(); ++k) mix = mix + (w[k] / total) * c.vertices[k];
            CHECK(satisfies(c.carrier, mix));
            CHECK(attains_norm(t, m.op_norm, mix));
        }
    }
}
