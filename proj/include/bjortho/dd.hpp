#pragma once

#include <bjortho/lp.hpp>

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace bjortho {

namespace detail {

// Scales a rational vector to a primitive integer vector (direction kept).
inline void make_primitive(VecQ& v) {
    Integer l = 1;
    for (const auto& q : v) l = lcm(l, Integer(denominator(q)));
    Integer g = 0;
    std::vector<Integer> ints(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        ints[i] = Integer(numerator(v[i])) * (l / Integer(denominator(v[i])));
        g = gcd(g, ints[i]);
    }
    if (g == 0) return;
    for (size_t i = 0; i < v.size(); ++i) v[i] = Rational(ints[i] / g, Integer(1));
}

} // namespace detail

/// Extreme rays of the pointed cone { y : row_i . y >= 0 } by the double
/// description method. Incremental: start from a simplicial subcone picked
/// from D independent rows, then clip with the remaining rows, combining
/// adjacent positive/negative ray pairs. Adjacency is the standard
/// combinatorial test on active-constraint sets. Throws when the
/// constraint rows do not span (the cone would contain a line).
inline std::vector<VecQ> dd_extreme_rays(const std::vector<VecQ>& rows, size_t D) {
    for (const auto& r : rows)
        if (r.size() != D) throw std::invalid_argument("dd_extreme_rays: row dimension mismatch");

    // Greedy selection of D independent rows for the simplicial start.
    std::vector<size_t> init;
    {
        MatQ probe(0, D);
        for (size_t i = 0; i < rows.size() && init.size() < D; ++i) {
            MatQ trial((probe.rows + 1), D);
            trial.m = probe.m;
            trial.m.push_back(rows[i]);
            trial.rows = probe.rows + 1;
            if (rank(trial) == trial.rows) {
                probe = trial;
                init.push_back(i);
            }
        }
    }
    if (init.size() < D) throw std::invalid_argument("dd_extreme_rays: cone is not pointed");

    MatQ M(D, D);
    for (size_t k = 0; k < D; ++k) M[k] = rows[init[k]];
    const MatQ Minv = *inverse(M);

    struct Ray {
        VecQ v;
        boost::dynamic_bitset<> zero;   // over processed row positions
    };
    std::vector<Ray> rays(D);
    for (size_t k = 0; k < D; ++k) {
        VecQ u(D);
        for (size_t i = 0; i < D; ++i) u[i] = Minv[i][k];
        detail::make_primitive(u);
        Ray r;
        r.v = std::move(u);
        r.zero.resize(D);
        for (size_t i = 0; i < D; ++i)
            if (i != k) r.zero.set(i);
        rays[k] = std::move(r);
    }

    std::vector<size_t> order = init;
    for (size_t i = 0; i < rows.size(); ++i)
        if (std::find(init.begin(), init.end(), i) == init.end()) order.push_back(i);

    for (size_t pos = D; pos < order.size(); ++pos) {
        const VecQ& r = rows[order[pos]];
        std::vector<Rational> val(rays.size());
        for (size_t i = 0; i < rays.size(); ++i) val[i] = dot(r, rays[i].v);

        std::vector<Ray> next;
        for (size_t i = 0; i < rays.size(); ++i) {
            if (val[i] < 0) continue;
            Ray keep = rays[i];
            keep.zero.push_back(val[i] == 0);
            next.push_back(std::move(keep));
        }
        for (size_t p = 0; p < rays.size(); ++p) {
            if (val[p] <= 0) continue;
            for (size_t n = 0; n < rays.size(); ++n) {
                if (val[n] >= 0) continue;
                auto common = rays[p].zero & rays[n].zero;
                bool adjacent = true;
                for (size_t w = 0; w < rays.size(); ++w) {
                    if (w == p || w == n) continue;
                    if (common.is_subset_of(rays[w].zero)) { adjacent = false; break; }
                }
                if (!adjacent) continue;
                Ray born;
                born.v = sub(scale(val[p], rays[n].v), scale(val[n], rays[p].v));
                detail::make_primitive(born.v);
                born.zero = std::move(common);
                born.zero.push_back(true);
                next.push_back(std::move(born));
            }
        }
        rays = std::move(next);
    }

    std::vector<VecQ> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.v));
    std::sort(out.begin(), out.end());
    return out;
}

/// All vertices of a (bounded) H-polytope, exactly. Equalities are
/// eliminated by affine substitution, the rest is homogenized into a
/// pointed-cone double description. Returns an empty list when the region
/// is infeasible; throws on an unbounded region.
inline std::vector<Point> vertices_of_hpolytope(const HPolytope& H) {
    VecQ origin(H.dim, Rational(0));
    std::vector<VecQ> null_basis;
    size_t k = H.dim;

    if (!H.eq.empty()) {
        MatQ A(H.eq.size(), H.dim);
        VecQ b(H.eq.size());
        for (size_t i = 0; i < H.eq.size(); ++i) {
            A[i] = H.eq[i].f.a;
            b[i] = H.eq[i].rhs;
        }
        auto part = solve_linear(A, b);
        if (!part) return {};
        origin = *part;
        null_basis = nullspace(A);
        k = null_basis.size();
    } else {
        null_basis.resize(H.dim, VecQ(H.dim, Rational(0)));
        for (size_t i = 0; i < H.dim; ++i) null_basis[i][i] = 1;
    }

    // Reduced inequalities over z: x = origin + sum z_j * null_basis[j].
    std::vector<std::pair<VecQ, Rational>> red;
    for (const auto& c : H.le) {
        VecQ f(k);
        for (size_t j = 0; j < k; ++j) f[j] = dot(c.f.a, null_basis[j]);
        Rational rest = c.rhs - dot(c.f.a, origin);
        if (is_zero(f)) {
            if (rest < 0) return {};
            continue;
        }
        red.emplace_back(std::move(f), std::move(rest));
    }
    if (k == 0) return {Point(origin)};

    std::vector<VecQ> cone_rows;
    cone_rows.reserve(red.size() + 1);
    for (const auto& [f, b] : red) {
        VecQ row(k + 1);
        for (size_t j = 0; j < k; ++j) row[j] = -f[j];
        row[k] = b;
        cone_rows.push_back(std::move(row));
    }
    {
        VecQ trow(k + 1, Rational(0));
        trow[k] = 1;
        cone_rows.push_back(std::move(trow));
    }

    std::vector<VecQ> rays;
    try {
        rays = dd_extreme_rays(cone_rows, k + 1);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("vertices_of_hpolytope: unbounded region");
    }

    std::vector<Point> verts;
    for (const auto& u : rays) {
        if (u[k] == 0) throw std::invalid_argument("vertices_of_hpolytope: unbounded region");
        VecQ x = origin;
        for (size_t j = 0; j < k; ++j) {
            const Rational z = u[j] / u[k];
            for (size_t i = 0; i < H.dim; ++i) x[i] += z * null_basis[j][i];
        }
        verts.emplace_back(std::move(x));
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}

/// Vertices of the unit ball { x : f_j(x) <= 1 }.
inline std::vector<Point> vertex_enumeration(const std::vector<Functional>& facets) {
    if (facets.empty()) throw std::invalid_argument("vertex_enumeration: empty facet list");
    HPolytope H;
    H.dim = facets[0].dim();
    for (const auto& f : facets) H.le.push_back({f, Rational(1)});
    auto verts = vertices_of_hpolytope(H);
    if (verts.empty()) throw std::invalid_argument("vertex_enumeration: region has no vertices");
    return verts;
}

inline std::vector<std::vector<bool>> incidence_matrix(const std::vector<Point>& vertices,
                                                       const std::vector<Functional>& facets) {
    std::vector<std::vector<bool>> inc(vertices.size(), std::vector<bool>(facets.size(), false));
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = 0; j < facets.size(); ++j)
            inc[i][j] = facets[j](vertices[i]) == 1;
    return inc;
}

struct DualDescription {
    std::vector<Functional> facets;            // scaled so facet value is 1
    std::vector<Point> vertices;               // extreme points actually found
    std::vector<std::vector<bool>> incidence;  // vertices x facets
    std::vector<std::string> warnings;
};

/// Facet description of conv(points) for a centrally symmetric full-
/// dimensional input with the origin interior. Facets are the vertices of
/// the polar body (points read as constraints p . f <= 1), and the polytope's
/// true vertex set is recovered by a second conversion, so repeated or
/// non-extreme input points only produce warnings.
inline DualDescription dual_description(const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("dual_description: empty point list");
    const size_t d = points[0].dim();
    for (const auto& p : points) {
        if (p.dim() != d) throw std::invalid_argument("dual_description: dimension mismatch");
        if (is_zero(p.x)) throw std::invalid_argument("dual_description: zero point in input");
    }

    std::vector<Point> uniq = points;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

    DualDescription out;
    if (uniq.size() != points.size()) out.warnings.push_back("duplicate points in input were merged");
    for (const auto& p : uniq) {
        if (!std::binary_search(uniq.begin(), uniq.end(), -p))
            throw std::invalid_argument("dual_description: input is not symmetric under negation (missing " +
                                        to_string(-p) + ")");
    }

    std::vector<Functional> as_constraints;
    as_constraints.reserve(uniq.size());
    for (const auto& p : uniq) as_constraints.push_back(Functional(p.x));

    std::vector<Point> polar;
    try {
        polar = vertex_enumeration(as_constraints);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(
            "dual_description: input hull is not full-dimensional (origin must be interior)");
    }
    for (const auto& f : polar) out.facets.push_back(Functional(f.x));

    out.vertices = vertex_enumeration(out.facets);
    for (const auto& p : uniq) {
        if (!std::binary_search(out.vertices.begin(), out.vertices.end(), p))
            out.warnings.push_back("input point " + to_string(p) + " is not extreme; dropped");
    }
    out.incidence = incidence_matrix(out.vertices, out.facets);
    return out;
}

} // namespace bjortho
