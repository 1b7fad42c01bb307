#pragma once
// Scenario catalog for the worked examples and the randomized consistency
// sweeps. Each scenario rebuilds its fixture from the space builders, runs
// the checks that pin its expected behaviour, and reports one JSON document.
// The CLI repro subcommands and the acceptance runner both read this table.

#include <bjortho/bs.hpp>
#include <bjortho/json_io.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bjortho {
namespace repro {

struct ScenarioReport {
    std::string name;
    bool pass = true;
    Json details = Json::object();
};

namespace detail {

struct Checker {
    Json items = Json::array();
    bool all = true;
    bool check(const std::string& what, bool ok) {
        items.push_back(Json{{"name", what}, {"pass", ok}});
        all = all && ok;
        return ok;
    }
};

// Deterministic rational sampler for the randomized sweeps.
struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(uint64_t seed) : rng(seed) {}

    Rational rational(int span, int maxden) {
        std::uniform_int_distribution<int> num(-span, span);
        std::uniform_int_distribution<int> den(1, maxden);
        return Rational(Integer(num(rng)), Integer(den(rng)));
    }
    Point point(size_t d, int span = 9, int maxden = 9) {
        VecQ v(d);
        for (auto& c : v) c = rational(span, maxden);
        return Point(std::move(v));
    }
    Point nonzero_point(size_t d, int span = 9, int maxden = 9) {
        for (;;) {
            Point p = point(d, span, maxden);
            if (!is_zero(p.x)) return p;
        }
    }
    MatQ matrix(size_t rows, size_t cols, int span, int maxden) {
        MatQ m(rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) m[i][j] = rational(span, maxden);
        return m;
    }
};

inline MatQ make_matrix(size_t rows, size_t cols, std::initializer_list<Rational> entries) {
    if (entries.size() != rows * cols) throw std::logic_error("make_matrix: entry count mismatch");
    MatQ m(rows, cols);
    auto it = entries.begin();
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m[i][j] = *it++;
    return m;
}

inline std::set<std::vector<Point>> maximal_vertex_sets(const MTComplex& m) {
    std::set<std::vector<Point>> out;
    for (const auto& c : m.cells)
        if (c.maximal) out.insert(c.vertices);
    return out;
}

inline std::vector<Point> sorted_unique(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

inline size_t binomial(size_t n, size_t k) {
    if (k > n) return 0;
    size_t r = 1;
    for (size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Closed-form membership test for the orthogonality set of the prism-level
// vertex (1,0,1) of the elongated bipyramid over the 2n-gon. tau is the
// polygon's first half-angle parameter, so x = tau*y is the ridge direction
// shared by the two facets through (1,0,1) and the apex side. The set is a
// union of one sign region per quadrant, mirrored through the origin.
inline bool apex_side_vertex_region(const Rational& tau, const Point& p) {
    const Rational& x = p[0];
    const Rational& y = p[1];
    const Rational& z = p[2];
    if (z < 0) return false;
    if (x >= 0 && y >= 0 && x - tau * y <= 0) return true;
    if (x <= 0 && y >= 0 && x + tau * y + z >= 0) return true;
    if (x <= 0 && y <= 0 && x - tau * y + z >= 0) return true;
    if (x >= 0 && y <= 0 && x + tau * y <= 0) return true;
    return false;
}

inline bool apex_side_vertex_orth(const Rational& tau, const Point& p) {
    return apex_side_vertex_region(tau, p) || apex_side_vertex_region(tau, -p);
}

// Closed-form membership test for the orthogonality set of the apex
// (0,0,2): some polygon edge functional, reflected into the quadrant of
// (x,y), dominates the height z. edges holds the first-quadrant edge
// functionals of the cross-section polygon.
inline bool apex_region(const std::vector<Functional>& edges, const Point& p) {
    const Rational& z = p[2];
    if (z < 0) return false;
    const Rational ax = abs(p[0]);
    const Rational ay = abs(p[1]);
    for (const auto& e : edges)
        if (e.a[0] * ax + e.a[1] * ay >= z) return true;
    return false;
}

inline bool apex_orth(const std::vector<Functional>& edges, const Point& p) {
    return apex_region(edges, p) || apex_region(edges, -p);
}

inline std::vector<Functional> first_quadrant_edges(const Space& polygon) {
    std::vector<Functional> out;
    for (const auto& f : polygon.facets)
        if (f.a[0] >= 0 && f.a[1] >= 0) out.push_back(f);
    return out;
}

} // namespace detail

// Rank-one map of the diamond into the cube: (x,y) -> (x, y, (x+y)/2).
// Attainment set is four isolated points, two classes after identifying
// antipodes, and the constructed perturbation admits no pointwise witness.
inline ScenarioReport scenario_example_2_1() {
    ScenarioReport r{"example-2.1"};
    detail::Checker c;
    const Space dom = build_l1(2);
    const Space cod = build_linf(3);
    const Operator t{detail::make_matrix(3, 2,
                                         {Rational(1), Rational(0),
                                          Rational(0), Rational(1),
                                          Rational(1, 2), Rational(1, 2)}),
                     dom, cod, "diamond-to-cube"};
    c.check("operator norm is 1", op_norm_value(t) == 1);

    const MTComplex m = norm_attainment_set(t);
    std::vector<Point> got;
    bool isolated = true;
    for (const auto& cell : m.cells)
        if (cell.maximal) {
            isolated = isolated && cell.dim == 0;
            got.insert(got.end(), cell.vertices.begin(), cell.vertices.end());
        }
    const std::vector<Point> want = detail::sorted_unique({Point{Rational(1), Rational(0)},
                                                           Point{Rational(0), Rational(1)},
                                                           Point{Rational(-1), Rational(0)},
                                                           Point{Rational(0), Rational(-1)}});
    c.check("attainment set is the four domain vertices, isolated",
            isolated && detail::sorted_unique(got) == want);

    const auto comp = mt_projective_components(t);
    c.check("two components after identifying antipodes", comp.second == 2);
    c.check("four components on the sphere", comp.first == 4);
    c.check("two-dimensional witness criterion fails", !bs_check_2d(t));

    CounterexampleSpec spec;
    spec.basis = {Point{Rational(1), Rational(0)}, Point{Rational(0), Rational(1)}};
    const Operator a = construct_counterexample(t, spec);
    c.check("perturbation orthogonal by the active-pair rule", op_is_bj_orthogonal(t, a));
    c.check("perturbation orthogonal by the global oracle", op_bj_oracle(t, a));
    c.check("no attainment point witnesses the orthogonality", !witness_exists(t, a));

    r.details["operator"] = json_of(t.matrix);
    r.details["op_norm"] = json_of(m.op_norm);
    r.details["components"] = Json{{"sphere", comp.first}, {"projective", comp.second}};
    r.details["perturbation"] = json_of(a.matrix);
    r.details["checks"] = c.items;
    r.details["bs_property"] = false;
    r.pass = c.all;
    return r;
}

// Half the identity from the cube into euclidean 3-space: every cube vertex
// attains the norm in isolation, and the same-side construction with unit
// scale factors produces an orthogonal perturbation without witnesses.
inline ScenarioReport scenario_example_2_2() {
    ScenarioReport r{"example-2.2"};
    detail::Checker c;
    const Space dom = build_linf(3);
    const Space cod = build_euclid(3);
    MatQ tm(3, 3);
    for (size_t i = 0; i < 3; ++i) tm[i][i] = Rational(1, 2);
    const Operator t{tm, dom, cod, "half-identity"};

    const MTComplex m = norm_attainment_set(t);
    c.check("squared operator norm is 3/4", m.norm_is_squared && m.op_norm == Rational(3, 4));

    std::vector<Point> got;
    bool isolated = true;
    size_t maximal = 0;
    for (const auto& cell : m.cells)
        if (cell.maximal) {
            ++maximal;
            isolated = isolated && cell.dim == 0;
            got.insert(got.end(), cell.vertices.begin(), cell.vertices.end());
        }
    c.check("attainment set is the eight cube vertices, isolated",
            isolated && maximal == 8 && detail::sorted_unique(got) == detail::sorted_unique(dom.vertices));

    CounterexampleSpec spec;
    spec.basis = {Point{Rational(1), Rational(1), Rational(1)},
                  Point{Rational(-1), Rational(1), Rational(1)},
                  Point{Rational(-1), Rational(-1), Rational(1)}};
    spec.alphas = {Rational(1)};
    spec.betas = {Rational(1)};
    const Operator a = construct_counterexample(t, spec);
    c.check("perturbation orthogonal by the active-pair rule", op_is_bj_orthogonal(t, a));
    c.check("perturbation orthogonal by the global oracle", op_bj_oracle(t, a));
    c.check("no attainment point witnesses the orthogonality", !witness_exists(t, a));

    r.details["operator"] = json_of(t.matrix);
    r.details["op_norm_sq"] = json_of(m.op_norm);
    r.details["attainment_points"] = maximal;
    r.details["perturbation"] = json_of(a.matrix);
    r.details["checks"] = c.items;
    r.details["bs_property"] = false;
    r.pass = c.all;
    return r;
}

// Cube onto two vertex classes of the rationalized decagon. The attainment
// set is four parallel edges, the codomain keeps the four-family covering
// property, and the corollary route certifies the failure.
inline ScenarioReport scenario_example_2_3() {
    ScenarioReport r{"example-2.3"};
    detail::Checker c;
    const Space dom = build_linf(3);
    const Space cod = build_polygon(10);
    const Point& u0 = cod.vertices[0];
    const Point& u2 = cod.vertices[2];
    // columns: images of the coordinate directions
    MatQ tm(2, 3);
    for (size_t i = 0; i < 2; ++i) {
        tm[i][0] = (u0[i] - u2[i]) / 2;
        tm[i][1] = (u0[i] + u2[i]) / 2;
        tm[i][2] = 0;
    }
    const Operator t{tm, dom, cod, "cube-to-decagon"};
    c.check("operator norm is 1", op_norm_value(t) == 1);

    const MTComplex m = norm_attainment_set(t);
    auto edge = [](int sx, int sy) {
        return detail::sorted_unique({Point{Rational(sx), Rational(sy), Rational(-1)},
                                      Point{Rational(sx), Rational(sy), Rational(1)}});
    };
    const std::set<std::vector<Point>> want = {edge(1, 1), edge(-1, -1), edge(-1, 1), edge(1, -1)};
    c.check("attainment set is two antipodal pairs of vertical cube edges",
            detail::maximal_vertex_sets(m) == want);

    const ImageClassReport classes = image_classes(t, m);
    c.check("images fall into two classes", classes.all_cells_constant && classes.classes.size() == 2);

    CounterexampleSpec spec;
    spec.basis = {Point{Rational(1), Rational(1), Rational(1)},
                  Point{Rational(-1), Rational(1), Rational(1)},
                  Point{Rational(-1), Rational(-1), Rational(1)}};
    spec.alphas = {Rational(-10)};
    spec.betas = {Rational(-3, 2)};
    const CorollaryResult cor = corollary_pn_bs(t, 4, spec);
    c.check("corollary route certifies the failure", cor.status == CorollaryStatus::violates_bs);
    if (cor.evidence) {
        c.check("perturbation orthogonal by the active-pair rule", op_is_bj_orthogonal(t, *cor.evidence));
        c.check("perturbation orthogonal by the global oracle", op_bj_oracle(t, *cor.evidence));
        c.check("no attainment point witnesses the orthogonality", !witness_exists(t, *cor.evidence));
        r.details["perturbation"] = json_of(cor.evidence->matrix);
    }

    r.details["operator"] = json_of(t.matrix);
    r.details["corollary"] = json_of(cor);
    r.details["checks"] = c.items;
    r.details["bs_property"] = false;
    r.pass = c.all;
    return r;
}

// Cube onto two vertex classes of the elongated bipyramid over the octagon.
// Attainment is again four vertical edges; the codomain keeps the pair
// covering property, so the corollary applies with two image classes.
inline ScenarioReport scenario_example_2_4() {
    ScenarioReport r{"example-2.4"};
    detail::Checker c;
    const Space dom = build_linf(3);
    const Space cod = build_bipyramid_prism(4);
    const Operator t{detail::make_matrix(3, 3,
                                         {Rational(1, 2), Rational(1, 2), Rational(0),
                                          Rational(-1, 2), Rational(1, 2), Rational(0),
                                          Rational(0), Rational(1), Rational(0)}),
                     dom, cod, "cube-to-bipyramid"};
    c.check("operator norm is 1", op_norm_value(t) == 1);

    const MTComplex m = norm_attainment_set(t);
    auto edge = [](int sx, int sy) {
        return detail::sorted_unique({Point{Rational(sx), Rational(sy), Rational(-1)},
                                      Point{Rational(sx), Rational(sy), Rational(1)}});
    };
    const std::set<std::vector<Point>> want = {edge(1, 1), edge(-1, -1), edge(-1, 1), edge(1, -1)};
    c.check("attainment set is two antipodal pairs of vertical cube edges",
            detail::maximal_vertex_sets(m) == want);

    const ImageClassReport classes = image_classes(t, m);
    c.check("images fall into two classes", classes.all_cells_constant && classes.classes.size() == 2);

    CounterexampleSpec spec;
    spec.basis = {Point{Rational(1), Rational(1), Rational(1)},
                  Point{Rational(-1), Rational(1), Rational(1)},
                  Point{Rational(-1), Rational(-1), Rational(1)}};
    spec.alphas = {Rational(-10)};
    spec.betas = {Rational(-3, 2)};
    const CorollaryResult cor = corollary_pn_bs(t, 2, spec);
    c.check("corollary route certifies the failure", cor.status == CorollaryStatus::violates_bs);
    if (cor.evidence) {
        c.check("perturbation orthogonal by the active-pair rule", op_is_bj_orthogonal(t, *cor.evidence));
        c.check("perturbation orthogonal by the global oracle", op_bj_oracle(t, *cor.evidence));
        c.check("no attainment point witnesses the orthogonality", !witness_exists(t, *cor.evidence));
        r.details["perturbation"] = json_of(cor.evidence->matrix);
    }

    r.details["operator"] = json_of(t.matrix);
    r.details["corollary"] = json_of(cor);
    r.details["checks"] = c.items;
    r.details["bs_property"] = false;
    r.pass = c.all;
    return r;
}

// Rationalized 2n-gons keep the (n-1)-family covering property and lose the
// n-family one, with the full set of vertex classes as the covering family.
inline ScenarioReport scenario_polygon_pn() {
    ScenarioReport r{"polygon-pn"};
    detail::Checker c;
    Json rows = Json::array();
    for (size_t n : {size_t{2}, size_t{3}, size_t{4}, size_t{5}}) {
        const Space s = build_polygon(2 * n);
        const PnCertificate keep = has_property_pn(s, n - 1);
        const PnCertificate lose = has_property_pn(s, n);
        c.check(s.label + " keeps the (n-1)-family property", keep.verdict == PnVerdict::has_pn);
        c.check(s.label + " loses the n-family property to the full class family",
                lose.verdict == PnVerdict::lacks_pn && lose.covering_points.size() == n);
        Json row;
        row["space"] = s.label;
        row["witnessed_families"] = keep.family_witnesses.size();
        row["covering"] = json_of(lose);
        rows.push_back(std::move(row));
    }
    r.details["spaces"] = std::move(rows);
    r.details["checks"] = c.items;
    r.pass = c.all;
    return r;
}

// Max-norm and sum-norm cubes of every dimension lose the pair covering
// property through the direct-sum lifting: orthogonality in the base factor
// survives appending any coordinate in the extension.
inline ScenarioReport scenario_sum_lifting() {
    ScenarioReport r{"sum-lifting"};
    detail::Checker c;
    for (size_t d : {size_t{2}, size_t{3}, size_t{4}}) {
        const Space si = build_linf(d);
        VecQ a(d, Rational(0)), b(d, Rational(0));
        a[0] = 1;
        a[1] = 1;
        b[0] = 1;
        b[1] = -1;
        const CoverageCertificate ci = covers(si, {Point(a), Point(b)});
        c.check(si.label + " covered by the lifted diagonal pair", ci.verdict == CoverageVerdict::covered);
        c.check(si.label + " loses the pair property",
                has_property_pn(si, 2).verdict == PnVerdict::lacks_pn);

        const Space s1 = build_l1(d);
        VecQ e1(d, Rational(0)), e2(d, Rational(0));
        e1[0] = 1;
        e2[1] = 1;
        const CoverageCertificate c1 = covers(s1, {Point(e1), Point(e2)});
        c.check(s1.label + " covered by the lifted axis pair", c1.verdict == CoverageVerdict::covered);
        c.check(s1.label + " loses the pair property",
                has_property_pn(s1, 2).verdict == PnVerdict::lacks_pn);
    }

    // lifting identity: x orthogonal to w in the base forces (x,0)
    // orthogonal to (w,y) in the sum, for every y
    struct Mode {
        const char* name;
        Space base;
        Space ext;
    };
    std::vector<Mode> modes;
    modes.push_back({"max-sum", build_linf(2), direct_sum(build_linf(2), build_linf(1), SumMode::inf)});
    modes.push_back({"sum-sum", build_l1(2), direct_sum(build_l1(2), build_l1(1), SumMode::one)});
    for (const auto& mode : modes) {
        detail::Sampler smp(20260816u);
        size_t hits = 0, draws = 0, violations = 0;
        while (hits < 1000 && draws < 100000) {
            ++draws;
            const Point x = smp.nonzero_point(2);
            const Point w = smp.point(2);
            if (!is_bj_orthogonal(mode.base, x, w)) continue;
            ++hits;
            const Rational y = smp.rational(9, 9);
            const Point xe{x[0], x[1], Rational(0)};
            const Point we{w[0], w[1], y};
            if (!is_bj_orthogonal(mode.ext, xe, we)) ++violations;
        }
        c.check(std::string(mode.name) + " lifting holds on 1000 orthogonal samples",
                hits == 1000 && violations == 0);
    }
    r.details["checks"] = c.items;
    r.pass = c.all;
    return r;
}

// Prisms over the rationalized 2n-gon: the two horizontally opposite top
// vertices cover the whole space, and the square prism carries the
// max(sum, height) norm exactly.
inline ScenarioReport scenario_prism() {
    ScenarioReport r{"prism"};
    detail::Checker c;

    const Space p2 = build_prism(2);
    std::vector<Point> want;
    for (int sx : {1, -1})
        for (int sz : {1, -1}) {
            want.push_back(Point{Rational(sx), Rational(0), Rational(sz)});
            want.push_back(Point{Rational(0), Rational(sx), Rational(sz)});
        }
    c.check("square prism has the eight expected vertices",
            detail::sorted_unique(p2.vertices) == detail::sorted_unique(want));

    detail::Sampler smp(40902u);
    size_t bad = 0;
    for (size_t i = 0; i < 1000; ++i) {
        const Point p = smp.point(3);
        const Rational flat = abs(p[0]) + abs(p[1]);
        const Rational expect = flat > abs(p[2]) ? flat : abs(p[2]);
        if (norm(p2, p) != expect) ++bad;
    }
    c.check("square prism norm matches max(|x|+|y|, |z|) on 1000 points", bad == 0);

    Json rows = Json::array();
    for (size_t n : {size_t{2}, size_t{3}, size_t{4}, size_t{5}}) {
        const Space s = build_prism(n);
        const std::vector<Point> family = {Point{Rational(1), Rational(0), Rational(1)},
                                           Point{Rational(-1), Rational(0), Rational(1)}};
        const CoverageCertificate cert = covers(s, family);
        c.check(s.label + " covered by the opposite top vertex pair",
                cert.verdict == CoverageVerdict::covered);
        rows.push_back(Json{{"space", s.label}, {"sign_vectors", cert.checked_sign_vectors}});
    }
    r.details["coverage"] = std::move(rows);
    r.details["checks"] = c.items;
    r.pass = c.all;
    return r;
}

// Two square pyramids glued through the cube: closed-form norm, a covering
// vertex pair, and covering number exactly two.
inline ScenarioReport scenario_glued_pyramids() {
    ScenarioReport r{"glued-pyramids"};
    detail::Checker c;
    const Space s = build_glued_pyramids();

    detail::Sampler smp(61803u);
    size_t bad = 0;
    for (size_t i = 0; i < 1000; ++i) {
        const Point p = smp.point(3);
        const Rational ax = abs(p[0]), ay = abs(p[1]), az = abs(p[2]);
        Rational expect = ax;
        if (ay > expect) expect = ay;
        if ((ax + az) / 2 > expect) expect = (ax + az) / 2;
        if ((ay + az) / 2 > expect) expect = (ay + az) / 2;
        if (norm(s, p) != expect) ++bad;
    }
    c.check("norm matches max(|x|, |y|, (|x|+|z|)/2, (|y|+|z|)/2) on 1000 points", bad == 0);

    const std::vector<Point> family = {Point{Rational(1), Rational(1), Rational(1)},
                                       Point{Rational(1), Rational(-1), Rational(1)}};
    c.check("covered by the adjacent cube vertex pair",
            covers(s, family).verdict == CoverageVerdict::covered);

    const CoveringNumber mc = min_covering_number(s);
    c.check("covering number is two", mc.m == 2);

    r.details["covering_number"] = json_of(mc);
    r.details["checks"] = c.items;
    r.pass = c.all;
    return r;
}

// Elongated bipyramids keep the pair covering property but lose the triple
// one, and the two closed-form orthogonality-set membership tests agree
// with the generic decision on random points.
inline ScenarioReport scenario_bipyramid() {
    ScenarioReport r{"bipyramid"};
    detail::Checker c;
    Json rows = Json::array();
    for (size_t n : {size_t{3}, size_t{4}}) {
        const Space s = build_bipyramid_prism(n);
        const size_t classes = antipodal_class_reps(s).size();

        const PnCertificate pairs = has_property_pn(s, 2);
        c.check(s.label + " keeps the pair property over all class pairs",
                pairs.verdict == PnVerdict::has_pn &&
                    pairs.families_checked == detail::binomial(classes, 2));
        const PnCertificate triples = has_property_pn(s, 3);
        c.check(s.label + " loses the triple property", triples.verdict == PnVerdict::lacks_pn);

        const Point v1{Rational(1), Rational(0), Rational(1)};
        const Point vn1{Rational(-1), Rational(0), Rational(1)};
        const Point w1{Rational(0), Rational(0), Rational(2)};
        c.check(s.label + " covered by the two ridge vertices and the apex",
                covers(s, {v1, vn1, w1}).verdict == CoverageVerdict::covered);

        const Rational tau = bjortho::detail::half_angle_params(n)[1];
        const Space poly = build_polygon(2 * n);
        const auto edges = detail::first_quadrant_edges(poly);
        detail::Sampler smp(70000u + n);
        size_t ridge_bad = 0, apex_bad = 0;
        for (size_t i = 0; i < 1000; ++i) {
            const Point p = smp.point(3);
            if (detail::apex_side_vertex_orth(tau, p) != is_bj_orthogonal(s, v1, p)) ++ridge_bad;
            if (detail::apex_orth(edges, p) != is_bj_orthogonal(s, w1, p)) ++apex_bad;
        }
        c.check(s.label + " ridge vertex membership test agrees on 1000 points", ridge_bad == 0);
        c.check(s.label + " apex membership test agrees on 1000 points", apex_bad == 0);

        rows.push_back(Json{{"space", s.label},
                            {"classes", classes},
                            {"pair_families", pairs.families_checked},
                            {"triple_covering", json_of(triples)}});
    }
    r.details["spaces"] = std::move(rows);
    r.details["checks"] = c.items;
    r.pass = c.all;
    return r;
}

// Randomized cross-check of the two independent decision routes, for
// vectors and for operators, across the desk fixtures.
inline ScenarioReport scenario_oracle_agreement() {
    ScenarioReport r{"oracle-agreement"};
    detail::Checker c;

    const std::vector<Space> spaces = {build_prism(2),     build_glued_pyramids(),
                                       build_bipyramid_prism(3), build_polygon(6),
                                       build_l1(3),        build_linf(3),
                                       build_polygon(10),  build_euclid(3)};
    detail::Sampler smp(90001u);
    size_t vec_checked = 0, vec_bad = 0;
    for (const auto& s : spaces)
        for (size_t i = 0; i < 1250; ++i) {
            const Point x = smp.point(s.dim);
            const Point y = smp.point(s.dim);
            if (is_bj_orthogonal(s, x, y) != bj_oracle(s, x, y)) ++vec_bad;
            ++vec_checked;
        }
    c.check("10000 vector decisions agree across both routes", vec_checked == 10000 && vec_bad == 0);

    struct Combo {
        Space dom;
        Space cod;
    };
    const std::vector<Combo> combos = {{build_linf(2), build_linf(2)},
                                       {build_l1(2), build_linf(3)},
                                       {build_linf(3), build_bipyramid_prism(3)},
                                       {build_linf(2), build_euclid(2)},
                                       {build_l1(3), build_euclid(3)}};
    size_t op_checked = 0, op_bad = 0;
    for (const auto& combo : combos)
        for (size_t i = 0; i < 200; ++i) {
            MatQ tm = smp.matrix(combo.cod.dim, combo.dom.dim, 3, 2);
            while ([&] {
                for (const auto& row : tm.m)
                    if (!is_zero(row)) return false;
                return true;
            }())
                tm = smp.matrix(combo.cod.dim, combo.dom.dim, 3, 2);
            const Operator t{tm, combo.dom, combo.cod, "sweep"};
            const Operator a{smp.matrix(combo.cod.dim, combo.dom.dim, 3, 2), combo.dom, combo.cod, "sweep"};
            if (op_is_bj_orthogonal(t, a) != op_bj_oracle(t, a)) ++op_bad;
            ++op_checked;
        }
    c.check("1000 operator decisions agree across both routes", op_checked == 1000 && op_bad == 0);

    r.details["vector_checks"] = vec_checked;
    r.details["operator_checks"] = op_checked;
    r.details["checks"] = c.items;
    r.pass = c.all;
    return r;
}

// Soundness sweep over every coverage verdict the other scenarios rely on:
// covered families absorb random directions, not-covered witnesses escape
// every member of their family.
inline ScenarioReport scenario_coverage_soundness() {
    ScenarioReport r{"coverage-soundness"};
    detail::Checker c;

    struct FamilyCase {
        Space space;
        std::vector<Point> family;
    };
    std::vector<FamilyCase> covered;

    for (size_t n : {size_t{2}, size_t{3}, size_t{4}, size_t{5}}) {
        Space s = build_polygon(2 * n);
        const PnCertificate lose = has_property_pn(s, n);
        covered.push_back({std::move(s), lose.covering_points});
    }
    for (size_t d : {size_t{2}, size_t{3}, size_t{4}}) {
        Space si = build_linf(d);
        VecQ a(d, Rational(0)), b(d, Rational(0));
        a[0] = 1;
        a[1] = 1;
        b[0] = 1;
        b[1] = -1;
        covered.push_back({std::move(si), {Point(a), Point(b)}});
        Space s1 = build_l1(d);
        VecQ e1(d, Rational(0)), e2(d, Rational(0));
        e1[0] = 1;
        e2[1] = 1;
        covered.push_back({std::move(s1), {Point(e1), Point(e2)}});
    }
    for (size_t n : {size_t{2}, size_t{3}, size_t{4}, size_t{5}})
        covered.push_back({build_prism(n),
                           {Point{Rational(1), Rational(0), Rational(1)},
                            Point{Rational(-1), Rational(0), Rational(1)}}});
    {
        Space glued = build_glued_pyramids();
        covered.push_back({glued,
                           {Point{Rational(1), Rational(1), Rational(1)},
                            Point{Rational(1), Rational(-1), Rational(1)}}});
        const CoveringNumber mc = min_covering_number(glued);
        covered.push_back({std::move(glued), mc.points});
    }
    for (size_t n : {size_t{3}, size_t{4}})
        covered.push_back({build_bipyramid_prism(n),
                           {Point{Rational(1), Rational(0), Rational(1)},
                            Point{Rational(-1), Rational(0), Rational(1)},
                            Point{Rational(0), Rational(0), Rational(2)}}});

    detail::Sampler smp(113355u);
    size_t families_checked = 0, directions_checked = 0, escapes = 0;
    for (const auto& fc : covered) {
        if (!c.check(fc.space.label + " family reports covered",
                     covers(fc.space, fc.family).verdict == CoverageVerdict::covered))
            continue;
        std::vector<OrthoSet> sets;
        for (const auto& member : fc.family) sets.push_back(ortho_set(fc.space, member));
        for (size_t i = 0; i < 10000; ++i) {
            const Point dir = smp.point(fc.space.dim);
            bool inside = false;
            for (const auto& os : sets)
                if (os.contains(dir)) {
                    inside = true;
                    break;
                }
            if (!inside) ++escapes;
            ++directions_checked;
        }
        ++families_checked;
    }
    c.check("every random direction lands in some member set", escapes == 0);

    size_t witness_checked = 0, witness_bad = 0;
    auto check_witnesses = [&](const Space& s, const PnCertificate& cert) {
        for (const auto& [fam, w] : cert.family_witnesses) {
            for (size_t idx : fam)
                if (ortho_set(s, s.vertices[idx]).contains(w)) ++witness_bad;
            ++witness_checked;
        }
    };
    for (size_t n : {size_t{2}, size_t{3}, size_t{4}, size_t{5}}) {
        const Space s = build_polygon(2 * n);
        check_witnesses(s, has_property_pn(s, n - 1));
    }
    for (size_t n : {size_t{3}, size_t{4}}) {
        const Space s = build_bipyramid_prism(n);
        check_witnesses(s, has_property_pn(s, 2));
    }
    c.check("every non-covering family witness escapes all its members",
            witness_checked > 0 && witness_bad == 0);

    r.details["covered_families"] = families_checked;
    r.details["directions"] = directions_checked;
    r.details["witnesses"] = witness_checked;
    r.details["checks"] = c.items;
    r.pass = c.all;
    return r;
}

using ScenarioFn = ScenarioReport (*)();

struct ScenarioEntry {
    const char* name;
    ScenarioFn fn;
};

inline const std::vector<ScenarioEntry>& scenario_catalog() {
    static const std::vector<ScenarioEntry> catalog = {
        {"example-2.1", scenario_example_2_1},
        {"example-2.2", scenario_example_2_2},
        {"example-2.3", scenario_example_2_3},
        {"example-2.4", scenario_example_2_4},
        {"prism", scenario_prism},
        {"glued-pyramids", scenario_glued_pyramids},
        {"bipyramid", scenario_bipyramid},
        {"polygon-pn", scenario_polygon_pn},
        {"sum-lifting", scenario_sum_lifting},
        {"oracle-agreement", scenario_oracle_agreement},
        {"coverage-soundness", scenario_coverage_soundness},
    };
    return catalog;
}

// Acceptance order: scenario names in the order the criteria are numbered.
inline const std::vector<std::string>& acceptance_order() {
    static const std::vector<std::string> names = {
        "example-2.1",  "example-2.2", "polygon-pn",       "sum-lifting",
        "prism",        "glued-pyramids", "bipyramid",     "example-2.4",
        "oracle-agreement", "coverage-soundness",
    };
    return names;
}

inline ScenarioReport run_scenario(const std::string& name) {
    for (const auto& entry : scenario_catalog())
        if (name == entry.name) {
            try {
                return entry.fn();
            } catch (const std::exception& ex) {
                ScenarioReport fail{name};
                fail.pass = false;
                fail.details["error"] = ex.what();
                return fail;
            }
        }
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

} // namespace repro
} // namespace bjortho
