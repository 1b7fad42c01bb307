#pragma once

#include <bjortho/dd.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bjortho {

enum class SpaceKind { polyhedral, euclidean };

/// A finite-dimensional normed space. Polyhedral: the unit ball is given by
/// its extreme points and by facet functionals scaled so the ball is
/// { x : f(x) <= 1 for every facet f }; both lists are closed under negation
/// and the vertex list sits exactly on the unit sphere. Euclidean: the norm
/// comes from a rational Gram matrix and only squared norms are used.
struct Space {
    SpaceKind kind = SpaceKind::polyhedral;
    size_t dim = 0;
    std::vector<Point> vertices;
    std::vector<Functional> facets;
    std::vector<std::vector<bool>> incidence;   // vertices x facets
    MatQ gram;
    std::string label;
};

inline bool is_polyhedral(const Space& s) { return s.kind == SpaceKind::polyhedral; }

namespace detail {
inline void require_polyhedral(const Space& s, const char* what) {
    if (s.kind != SpaceKind::polyhedral)
        throw std::invalid_argument(std::string(what) + ": requires a polyhedral space");
}
inline void require_dim(const Space& s, const Point& p, const char* what) {
    if (p.dim() != s.dim)
        throw std::invalid_argument(std::string(what) + ": point dimension mismatch");
}
} // namespace detail

/// Polyhedral norm: max of the facet functionals.
inline Rational norm(const Space& s, const Point& p) {
    detail::require_polyhedral(s, "norm");
    detail::require_dim(s, p, "norm");
    Rational best = 0;
    for (const auto& f : s.facets) {
        Rational v = f(p);
        if (v > best) best = v;
    }
    return best;
}

/// Squared norm; rational for both kinds.
inline Rational norm_sq(const Space& s, const Point& p) {
    detail::require_dim(s, p, "norm_sq");
    if (s.kind == SpaceKind::euclidean) {
        Rational acc = 0;
        for (size_t i = 0; i < s.dim; ++i)
            for (size_t j = 0; j < s.dim; ++j) acc += p[i] * s.gram[i][j] * p[j];
        return acc;
    }
    const Rational n = norm(s, p);
    return n * n;
}

inline Rational inner(const Space& s, const Point& p, const Point& q) {
    if (s.kind != SpaceKind::euclidean) throw std::invalid_argument("inner: requires a euclidean space");
    detail::require_dim(s, p, "inner");
    detail::require_dim(s, q, "inner");
    Rational acc = 0;
    for (size_t i = 0; i < s.dim; ++i)
        for (size_t j = 0; j < s.dim; ++j) acc += p[i] * s.gram[i][j] * q[j];
    return acc;
}

/// The face of the ball that norms x: the facets attaining max f(x).
struct NormingFace {
    Point point;
    std::vector<size_t> active;   // facet indices
    Rational value;               // = norm(x)
};

inline NormingFace norming_face(const Space& s, const Point& p) {
    detail::require_polyhedral(s, "norming_face");
    detail::require_dim(s, p, "norming_face");
    if (is_zero(p.x)) throw std::invalid_argument("norming_face: zero vector has no norming face");
    NormingFace nf;
    nf.point = p;
    nf.value = norm(s, p);
    for (size_t j = 0; j < s.facets.size(); ++j)
        if (s.facets[j](p) == nf.value) nf.active.push_back(j);
    return nf;
}

namespace detail {

inline Space finish_polyhedral(std::vector<Point> vertices, std::string label) {
    auto dd = dual_description(vertices);
    for (const auto& w : dd.warnings)
        throw std::logic_error("builder produced a degenerate vertex list: " + w);
    Space s;
    s.kind = SpaceKind::polyhedral;
    s.dim = vertices.front().dim();
    s.vertices = std::move(vertices);
    s.facets = std::move(dd.facets);
    s.incidence = incidence_matrix(s.vertices, s.facets);
    s.label = std::move(label);
    return s;
}

// Half-angle parameters t_j ~ tan(j*pi/(2n)), j = 0..n-1, rounded to
// denominator 1000 and mirrored so t_{n-j} = 1/t_j exactly. The mirrored
// form keeps the polygon closed under both axis reflections; every vertex
// ((1-t^2)/(1+t^2), 2t/(1+t^2)) lies exactly on the rational unit circle.
inline std::vector<Rational> half_angle_params(size_t n) {
    if (n < 2 || n > 100) throw std::invalid_argument("polygon size out of range (need 4 <= 2n <= 200)");
    std::vector<Rational> t(n);
    for (size_t j = 0; j <= n / 2; ++j) {
        const double val = std::tan(static_cast<double>(j) * M_PI / (2.0 * static_cast<double>(n)));
        t[j] = Rational(Integer(static_cast<long>(std::lround(val * 1000.0))), Integer(1000));
    }
    for (size_t j = n / 2 + 1; j < n; ++j) t[j] = Rational(1) / t[n - j];
    return t;
}

inline Point circle_point(const Rational& t) {
    const Rational den = 1 + t * t;
    return Point{(1 - t * t) / den, (2 * t) / den};
}

} // namespace detail

/// Centrally symmetric 2n-gon with rational vertices exactly on the unit
/// circle, spaced near the regular angles; (1,0) is always a vertex, and for
/// even n so is (0,1).
inline Space build_polygon(size_t two_n) {
    if (two_n % 2 != 0 || two_n < 4)
        throw std::invalid_argument("polygon: vertex count must be even and at least 4");
    const size_t n = two_n / 2;
    auto t = detail::half_angle_params(n);
    std::vector<Point> verts;
    verts.reserve(two_n);
    for (size_t j = 0; j < n; ++j) verts.push_back(detail::circle_point(t[j]));
    for (size_t j = 0; j < n; ++j) verts.push_back(-verts[j]);
    return detail::finish_polyhedral(std::move(verts), "polygon:" + std::to_string(two_n));
}

inline Space build_l1(size_t d) {
    if (d < 1 || d > 10) throw std::invalid_argument("l1: dimension out of range (1..10)");
    std::vector<Point> verts;
    for (size_t i = 0; i < d; ++i) {
        VecQ e(d, Rational(0));
        e[i] = 1;
        verts.push_back(Point(e));
        verts.push_back(Point(neg(e)));
    }
    return detail::finish_polyhedral(std::move(verts), "l1:" + std::to_string(d));
}

inline Space build_linf(size_t d) {
    if (d < 1 || d > 10) throw std::invalid_argument("linf: dimension out of range (1..10)");
    std::vector<Point> verts;
    for (uint64_t mask = 0; mask < (uint64_t{1} << d); ++mask) {
        VecQ v(d);
        for (size_t i = 0; i < d; ++i) v[i] = (mask >> i) & 1 ? Rational(1) : Rational(-1);
        verts.push_back(Point(std::move(v)));
    }
    return detail::finish_polyhedral(std::move(verts), "linf:" + std::to_string(d));
}

inline Space build_euclid(size_t d) {
    if (d < 1) throw std::invalid_argument("euclid: dimension must be positive");
    Space s;
    s.kind = SpaceKind::euclidean;
    s.dim = d;
    s.gram = MatQ::identity(d);
    s.label = "euclid:" + std::to_string(d);
    return s;
}

/// Prism over the rationalized 2n-gon: polygon vertices at heights +-1.
inline Space build_prism(size_t n) {
    if (n < 2) throw std::invalid_argument("prism: need n >= 2");
    Space poly = build_polygon(2 * n);
    std::vector<Point> verts;
    for (const auto& u : poly.vertices) {
        for (int h : {1, -1}) {
            VecQ v = u.x;
            v.push_back(Rational(h));
            verts.push_back(Point(std::move(v)));
        }
    }
    return detail::finish_polyhedral(std::move(verts), "prism:" + std::to_string(n));
}

/// Two square pyramids glued through the cube: vertices (+-1,+-1,+-1) and
/// (0,0,+-2).
inline Space build_glued_pyramids() {
    std::vector<Point> verts;
    for (int sx : {1, -1})
        for (int sy : {1, -1})
            for (int sz : {1, -1})
                verts.push_back(Point{Rational(sx), Rational(sy), Rational(sz)});
    verts.push_back(Point{Rational(0), Rational(0), Rational(2)});
    verts.push_back(Point{Rational(0), Rational(0), Rational(-2)});
    return detail::finish_polyhedral(std::move(verts), "glued_pyramids");
}

/// Prism over the rationalized 2n-gon elongated by apexes (0,0,+-2).
inline Space build_bipyramid_prism(size_t n) {
    if (n < 3) throw std::invalid_argument("bipyramid_prism: need n >= 3");
    Space poly = build_polygon(2 * n);
    std::vector<Point> verts;
    for (const auto& u : poly.vertices) {
        for (int h : {1, -1}) {
            VecQ v = u.x;
            v.push_back(Rational(h));
            verts.push_back(Point(std::move(v)));
        }
    }
    verts.push_back(Point{Rational(0), Rational(0), Rational(2)});
    verts.push_back(Point{Rational(0), Rational(0), Rational(-2)});
    return detail::finish_polyhedral(std::move(verts), "bipyramid_prism:" + std::to_string(n));
}

enum class SumMode { inf, one };

/// Direct sum of two polyhedral spaces with the max or the sum norm.
/// inf: vertices are all pairs (v,w), facets are (f,0) and (0,g).
/// one: vertices are (v,0) and (0,w), facets are all pairs (f,g).
inline Space direct_sum(const Space& a, const Space& b, SumMode mode) {
    detail::require_polyhedral(a, "direct_sum");
    detail::require_polyhedral(b, "direct_sum");
    const size_t d = a.dim + b.dim;
    auto joinp = [&](const Point& p, const Point& q) {
        VecQ v;
        v.reserve(d);
        v.insert(v.end(), p.x.begin(), p.x.end());
        v.insert(v.end(), q.x.begin(), q.x.end());
        return Point(std::move(v));
    };
    auto joinf = [&](const Functional& f, const Functional& g) {
        VecQ v;
        v.reserve(d);
        v.insert(v.end(), f.a.begin(), f.a.end());
        v.insert(v.end(), g.a.begin(), g.a.end());
        return Functional(std::move(v));
    };
    const Point zero_a{VecQ(a.dim, Rational(0))};
    const Point zero_b{VecQ(b.dim, Rational(0))};
    const Functional fzero_a{VecQ(a.dim, Rational(0))};
    const Functional fzero_b{VecQ(b.dim, Rational(0))};

    Space s;
    s.kind = SpaceKind::polyhedral;
    s.dim = d;
    if (mode == SumMode::inf) {
        for (const auto& v : a.vertices)
            for (const auto& w : b.vertices) s.vertices.push_back(joinp(v, w));
        for (const auto& f : a.facets) s.facets.push_back(joinf(f, fzero_b));
        for (const auto& g : b.facets) s.facets.push_back(joinf(fzero_a, g));
        s.label = "inf-sum(" + a.label + "," + b.label + ")";
    } else {
        for (const auto& v : a.vertices) s.vertices.push_back(joinp(v, zero_b));
        for (const auto& w : b.vertices) s.vertices.push_back(joinp(zero_a, w));
        for (const auto& f : a.facets)
            for (const auto& g : b.facets) s.facets.push_back(joinf(f, g));
        s.label = "one-sum(" + a.label + "," + b.label + ")";
    }
    s.incidence = incidence_matrix(s.vertices, s.facets);
    return s;
}

/// Builds a space from its canonical name: l1:d, linf:d, euclid:d,
/// polygon:2n, prism:n, glued_pyramids, bipyramid_prism:n.
inline Space build_named(const std::string& name) {
    auto parse_param = [&](const std::string& prefix) -> std::optional<size_t> {
        if (name.rfind(prefix + ":", 0) != 0) return std::nullopt;
        const std::string num = name.substr(prefix.size() + 1);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad space parameter in '" + name + "'");
        return static_cast<size_t>(std::stoul(num));
    };
    if (auto d = parse_param("l1")) return build_l1(*d);
    if (auto d = parse_param("linf")) return build_linf(*d);
    if (auto d = parse_param("euclid")) return build_euclid(*d);
    if (auto d = parse_param("polygon")) return build_polygon(*d);
    if (auto d = parse_param("prism")) return build_prism(*d);
    if (auto d = parse_param("bipyramid_prism")) return build_bipyramid_prism(*d);
    if (name == "glued_pyramids") return build_glued_pyramids();
    throw std::invalid_argument("unknown space name '" + name + "'");
}

/// Structural invariant report; empty means the space is well formed.
/// Reports instead of throwing so callers can show everything at once.
inline std::vector<std::string> validate(const Space& s) {
    std::vector<std::string> bad;
    auto complain = [&](std::string msg) { bad.push_back(std::move(msg)); };

    if (s.dim == 0) {
        complain("dimension is zero");
        return bad;
    }
    if (s.kind == SpaceKind::euclidean) {
        if (!s.vertices.empty() || !s.facets.empty())
            complain("euclidean space carries vertex/facet lists");
        if (s.gram.rows != s.dim || s.gram.cols != s.dim) {
            complain("gram matrix has wrong shape");
            return bad;
        }
        for (size_t i = 0; i < s.dim; ++i)
            for (size_t j = i + 1; j < s.dim; ++j)
                if (s.gram[i][j] != s.gram[j][i]) {
                    complain("gram matrix is not symmetric");
                    return bad;
                }
        // Positive definiteness via exact elimination pivots.
        MatQ g = s.gram;
        for (size_t k = 0; k < s.dim; ++k) {
            if (g[k][k] <= 0) {
                complain("gram matrix is not positive definite");
                return bad;
            }
            for (size_t i = k + 1; i < s.dim; ++i) {
                const Rational f = g[i][k] / g[k][k];
                for (size_t j = k; j < s.dim; ++j) g[i][j] -= f * g[k][j];
            }
        }
        return bad;
    }

    if (s.vertices.empty()) complain("no vertices");
    if (s.facets.empty()) complain("no facets");
    for (const auto& v : s.vertices)
        if (v.dim() != s.dim) complain("vertex dimension mismatch at " + to_string(v));
    for (const auto& f : s.facets)
        if (f.dim() != s.dim) complain("facet dimension mismatch at " + to_string(f));
    if (!bad.empty()) return bad;

    {
        auto sorted = s.vertices;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            complain("duplicate vertices");
        for (const auto& v : s.vertices)
            if (!std::binary_search(sorted.begin(), sorted.end(), -v))
                complain("vertex list is not closed under negation (missing " + to_string(-v) + ")");
    }
    {
        std::vector<Functional> sorted = s.facets;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            complain("duplicate facets");
        for (const auto& f : s.facets)
            if (!std::binary_search(sorted.begin(), sorted.end(), -f))
                complain("facet list is not closed under negation (missing " + to_string(-f) + ")");
    }

    for (size_t i = 0; i < s.vertices.size(); ++i) {
        Rational mx = 0;
        size_t active = 0, active_rank = 0;
        MatQ act(0, s.dim);
        for (const auto& f : s.facets) {
            const Rational v = f(s.vertices[i]);
            if (v > mx) mx = v;
        }
        if (mx != 1) {
            complain("vertex " + to_string(s.vertices[i]) + " does not have norm 1");
            continue;
        }
        for (const auto& f : s.facets)
            if (f(s.vertices[i]) == 1) {
                ++active;
                act.m.push_back(f.a);
                act.rows++;
            }
        active_rank = rank(act);
        if (active_rank != s.dim)
            complain("vertex " + to_string(s.vertices[i]) + " is not extreme (active facet rank " +
                     std::to_string(active_rank) + ")");
    }

    for (size_t j = 0; j < s.facets.size(); ++j) {
        std::vector<Point> on;
        Rational mx = 0;
        for (const auto& v : s.vertices) {
            const Rational val = s.facets[j](v);
            if (val > mx) mx = val;
            if (val == 1) on.push_back(v);
            if (val > 1) complain("facet " + to_string(s.facets[j]) + " cuts off vertex " + to_string(v));
        }
        if (mx != 1) {
            complain("facet " + to_string(s.facets[j]) + " never attains 1 on the vertex set");
            continue;
        }
        if (on.size() < s.dim) {
            complain("facet " + to_string(s.facets[j]) + " is redundant (touches " +
                     std::to_string(on.size()) + " vertices)");
            continue;
        }
        MatQ rel(on.size() - 1, s.dim);
        for (size_t i = 1; i < on.size(); ++i) rel[i - 1] = sub(on[i].x, on[0].x);
        if (rank(rel) != s.dim - 1)
            complain("facet " + to_string(s.facets[j]) + " is redundant (incident vertices span rank " +
                     std::to_string(rank(rel)) + ")");
    }

    {
        MatQ vm(s.vertices.size(), s.dim);
        for (size_t i = 0; i < s.vertices.size(); ++i) vm[i] = s.vertices[i].x;
        if (rank(vm) != s.dim) complain("vertex hull is not full-dimensional");
        MatQ fm(s.facets.size(), s.dim);
        for (size_t j = 0; j < s.facets.size(); ++j) fm[j] = s.facets[j].a;
        if (rank(fm) != s.dim) complain("facet functionals do not span (unit ball unbounded)");
    }

    if (!s.incidence.empty()) {
        auto expect = incidence_matrix(s.vertices, s.facets);
        if (expect != s.incidence) complain("incidence matrix does not match vertex/facet evaluation");
    }
    return bad;
}

/// Vertex indices of antipodal class representatives (the lexicographically
/// greater member of each +-v pair), ordered lexicographically descending.
inline std::vector<size_t> antipodal_class_reps(const Space& s) {
    detail::require_polyhedral(s, "antipodal_class_reps");
    std::vector<size_t> reps;
    for (size_t i = 0; i < s.vertices.size(); ++i)
        if (-s.vertices[i] < s.vertices[i]) reps.push_back(i);
    std::sort(reps.begin(), reps.end(),
              [&](size_t i, size_t j) { return s.vertices[j] < s.vertices[i]; });
    return reps;
}

} // namespace bjortho
