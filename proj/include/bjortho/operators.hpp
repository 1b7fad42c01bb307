#pragma once

#include <bjortho/dd.hpp>
#include <bjortho/ortho.hpp>
#include <bjortho/space.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bjortho {

/// A linear map between two finite-dimensional normed spaces, stored as a
/// codomain-dim x domain-dim rational matrix.
struct Operator {
    MatQ matrix;
    Space domain;
    Space codomain;
    std::string label;
};

inline Point apply(const Operator& t, const Point& p) {
    return Point(mat_vec(t.matrix, p.x));
}

namespace detail {

inline void check_operator(const Operator& t, const char* what) {
    if (t.matrix.rows != t.codomain.dim || t.matrix.cols != t.domain.dim)
        throw std::invalid_argument(std::string(what) + ": matrix shape does not match the spaces");
}

inline bool is_zero_operator(const Operator& t) {
    for (const auto& row : t.matrix.m)
        if (!is_zero(row)) return false;
    return true;
}

inline bool same_space(const Space& a, const Space& b) {
    return a.kind == b.kind && a.dim == b.dim && a.vertices == b.vertices &&
           a.facets == b.facets && a.gram == b.gram;
}

inline void check_pair(const Operator& t, const Operator& a, const char* what) {
    check_operator(t, what);
    check_operator(a, what);
    if (!same_space(t.domain, a.domain) || !same_space(t.codomain, a.codomain))
        throw std::invalid_argument(std::string(what) + ": operators live on different spaces");
}

/// Norm of an image point: the codomain norm, or its square when the
/// codomain is euclidean. All operator-level comparisons stay in one of the
/// two scales consistently.
inline Rational image_gauge(const Space& codomain, const Point& y) {
    return codomain.kind == SpaceKind::euclidean ? norm_sq(codomain, y) : norm(codomain, y);
}

} // namespace detail

/// Largest image gauge over domain vertices. A convex function attains its
/// maximum over the ball at a vertex, so this is the operator norm
/// (squared when the codomain is euclidean).
inline Rational op_norm_value(const Operator& t) {
    detail::check_operator(t, "op_norm_value");
    detail::require_polyhedral(t.domain, "op_norm_value");
    Rational best = 0;
    for (const auto& v : t.domain.vertices) {
        const Rational g = detail::image_gauge(t.codomain, apply(t, v));
        if (g > best) best = g;
    }
    return best;
}

inline bool op_norm_is_squared(const Operator& t) {
    return t.codomain.kind == SpaceKind::euclidean;
}

/// A vertex-functional pair attaining the operator norm: g(Tv) = ||T||.
struct OperatorActivePair {
    Point domain_vertex;
    Functional codomain_functional;
};

inline std::vector<OperatorActivePair> op_active_pairs(const Operator& t) {
    detail::check_operator(t, "op_active_pairs");
    detail::require_polyhedral(t.domain, "op_active_pairs");
    detail::require_polyhedral(t.codomain, "op_active_pairs");
    const Rational n = op_norm_value(t);
    std::vector<OperatorActivePair> out;
    for (const auto& v : t.domain.vertices) {
        const Point tv = apply(t, v);
        for (const auto& g : t.codomain.facets)
            if (g(tv) == n) out.push_back({v, g});
    }
    return out;
}

/// One closed cell of the norm attainment set: a face of the unit sphere on
/// which the operator norm is attained. Cells are faces of the region
/// {||x|| <= 1, gauge(Tx) <= ||T||}; the carrier lists that region plus the
/// equalities active on the cell, and the cell equals the convex hull of its
/// vertices.
struct MTCell {
    HPolytope carrier;
    std::vector<size_t> active_domain;     // domain facets identically 1 on the cell
    std::vector<size_t> active_codomain;   // codomain facets with g(Tx) = ||T|| on the cell
    std::vector<Point> vertices;           // sorted
    size_t dim = 0;
    bool maximal = true;
    bool image_constant = true;
    std::optional<Point> image;            // common image when image_constant
};

struct MTComplex {
    Rational op_norm = 0;        // squared when norm_is_squared
    bool norm_is_squared = false;
    std::vector<MTCell> cells;
};

namespace detail {

inline size_t affine_dim(const std::vector<Point>& pts) {
    if (pts.size() <= 1) return 0;
    MatQ d(pts.size() - 1, pts[0].dim());
    for (size_t i = 1; i < pts.size(); ++i) d[i - 1] = sub(pts[i].x, pts[0].x);
    return rank(d);
}

/// Functional x -> g(Tx), i.e. T^t g.
inline Functional pullback(const MatQ& tmat, const Functional& g) {
    VecQ a(tmat.cols, Rational(0));
    for (size_t j = 0; j < tmat.cols; ++j)
        for (size_t i = 0; i < tmat.rows; ++i) a[j] += g[i] * tmat[i][j];
    return Functional(std::move(a));
}

inline MTCell finish_cell(const Operator& t, const Rational& n,
                          std::vector<Point> verts,
                          const std::vector<Functional>& codomain_pullbacks) {
    MTCell cell;
    cell.vertices = std::move(verts);
    std::sort(cell.vertices.begin(), cell.vertices.end());
    cell.dim = affine_dim(cell.vertices);

    for (size_t a = 0; a < t.domain.facets.size(); ++a) {
        bool tight = true;
        for (const auto& w : cell.vertices)
            if (t.domain.facets[a](w) != 1) { tight = false; break; }
        if (tight) cell.active_domain.push_back(a);
    }
    for (size_t b = 0; b < codomain_pullbacks.size(); ++b) {
        bool tight = true;
        for (const auto& w : cell.vertices)
            if (codomain_pullbacks[b](w) != n) { tight = false; break; }
        if (tight) cell.active_codomain.push_back(b);
    }

    cell.carrier.dim = t.domain.dim;
    for (const auto& f : t.domain.facets) cell.carrier.le.push_back({f, Rational(1)});
    for (const auto& h : codomain_pullbacks) cell.carrier.le.push_back({h, n});
    for (size_t a : cell.active_domain) cell.carrier.eq.push_back({t.domain.facets[a], Rational(1)});
    for (size_t b : cell.active_codomain) cell.carrier.eq.push_back({codomain_pullbacks[b], n});

    cell.image = apply(t, cell.vertices.front());
    for (const auto& w : cell.vertices)
        if (apply(t, w) != *cell.image) {
            cell.image_constant = false;
            cell.image.reset();
            break;
        }
    return cell;
}

} // namespace detail

/// The set where T attains its norm, as a complex of closed sphere faces
/// (maximal cells and their faces; negation-closed). Polyhedral codomain:
/// cells are faces of {||x|| <= 1, g(Tx) <= ||T||} lying in the sphere,
/// seeded per (domain facet, codomain facet) pair and closed under pairwise
/// intersection. Euclidean codomain: strict convexity forces T to be
/// constant on every attaining face, so cells are the ball faces whose
/// vertices attain the norm with one shared image.
inline MTComplex norm_attainment_set(const Operator& t) {
    detail::check_operator(t, "norm_attainment_set");
    detail::require_polyhedral(t.domain, "norm_attainment_set");
    const Rational n = op_norm_value(t);

    MTComplex mt;
    mt.op_norm = n;
    mt.norm_is_squared = op_norm_is_squared(t);

    std::set<std::vector<Point>> seen;

    if (t.codomain.kind == SpaceKind::polyhedral) {
        std::vector<Functional> pull;
        for (const auto& g : t.codomain.facets) pull.push_back(detail::pullback(t.matrix, g));

        HPolytope qn;
        qn.dim = t.domain.dim;
        for (const auto& f : t.domain.facets) qn.le.push_back({f, Rational(1)});
        for (const auto& h : pull) qn.le.push_back({h, n});
        const std::vector<Point> qverts = vertices_of_hpolytope(qn);

        for (size_t a = 0; a < t.domain.facets.size(); ++a)
            for (size_t b = 0; b < pull.size(); ++b) {
                std::vector<Point> cellverts;
                for (const auto& w : qverts)
                    if (t.domain.facets[a](w) == 1 && pull[b](w) == n) cellverts.push_back(w);
                if (!cellverts.empty()) {
                    std::sort(cellverts.begin(), cellverts.end());
                    seen.insert(std::move(cellverts));
                }
            }
        // close under pairwise intersection so every face of a cell that can
        // carry its own active set is present
        for (bool grew = true; grew;) {
            grew = false;
            std::vector<std::vector<Point>> cur(seen.begin(), seen.end());
            for (size_t i = 0; i < cur.size(); ++i)
                for (size_t j = i + 1; j < cur.size(); ++j) {
                    std::vector<Point> inter;
                    std::set_intersection(cur[i].begin(), cur[i].end(),
                                          cur[j].begin(), cur[j].end(),
                                          std::back_inserter(inter));
                    if (!inter.empty() && seen.insert(inter).second) grew = true;
                }
        }
        for (const auto& verts : seen)
            mt.cells.push_back(detail::finish_cell(t, n, verts, pull));
    } else {
        std::vector<Point> attaining;
        for (const auto& v : t.domain.vertices)
            if (norm_sq(t.codomain, apply(t, v)) == n) attaining.push_back(v);

        std::map<Point, std::vector<Point>> groups;
        for (const auto& v : attaining) groups[apply(t, v)].push_back(v);

        for (const auto& [image, group] : groups) {
            if (group.size() > 16)
                throw std::invalid_argument("norm_attainment_set: attaining vertex group too large");
            const size_t gs = group.size();
            for (size_t mask = 1; mask < (size_t{1} << gs); ++mask) {
                std::vector<const Point*> sub;
                for (size_t i = 0; i < gs; ++i)
                    if ((mask >> i) & 1) sub.push_back(&group[i]);
                // smallest ball face containing the subset
                std::vector<size_t> common;
                for (size_t a = 0; a < t.domain.facets.size(); ++a) {
                    bool tight = true;
                    for (const Point* p : sub)
                        if (t.domain.facets[a](*p) != 1) { tight = false; break; }
                    if (tight) common.push_back(a);
                }
                if (common.empty()) continue;   // not a sphere face
                std::vector<Point> faceverts;
                for (const auto& v : t.domain.vertices) {
                    bool on = true;
                    for (size_t a : common)
                        if (t.domain.facets[a](v) != 1) { on = false; break; }
                    if (on) faceverts.push_back(v);
                }
                bool inside = true;
                for (const auto& v : faceverts)
                    if (std::find(group.begin(), group.end(), v) == group.end()) { inside = false; break; }
                if (!inside) continue;          // face leaks outside the constant-image group
                std::sort(faceverts.begin(), faceverts.end());
                seen.insert(std::move(faceverts));
            }
        }
        for (const auto& verts : seen)
            mt.cells.push_back(detail::finish_cell(t, n, verts, {}));
    }

    std::sort(mt.cells.begin(), mt.cells.end(),
              [](const MTCell& a, const MTCell& b) { return a.vertices < b.vertices; });
    for (auto& c : mt.cells)
        for (const auto& other : mt.cells) {
            if (&c == &other || other.vertices.size() <= c.vertices.size()) continue;
            if (std::includes(other.vertices.begin(), other.vertices.end(),
                              c.vertices.begin(), c.vertices.end())) {
                c.maximal = false;
                break;
            }
        }
    return mt;
}

/// True when x lies on the unit sphere and attains the operator norm.
inline bool attains_norm(const Operator& t, const Rational& opn, const Point& x) {
    if (norm(t.domain, x) != 1) return false;
    return detail::image_gauge(t.codomain, apply(t, x)) == opn;
}

struct ImageClass {
    Point rep;            // lexicographically larger of {w, -w}
    size_t multiplicity;  // maximal cells mapping into the class
};

struct ImageClassReport {
    std::vector<ImageClass> classes;
    bool all_cells_constant = true;
    std::vector<size_t> nonconstant_cells;   // indices into complex.cells
};

/// Images of the maximal attainment cells, up to sign. Cells on which T is
/// not constant are flagged instead of classified.
inline ImageClassReport image_classes(const Operator& t, const MTComplex& m) {
    detail::check_operator(t, "image_classes");
    ImageClassReport rep;
    std::map<Point, size_t> mult;
    for (size_t i = 0; i < m.cells.size(); ++i) {
        const MTCell& c = m.cells[i];
        if (!c.maximal) continue;
        if (!c.image_constant) {
            rep.all_cells_constant = false;
            rep.nonconstant_cells.push_back(i);
            continue;
        }
        const Point& w = *c.image;
        const Point neg = -w;
        ++mult[w < neg ? neg : w];
    }
    for (auto& [w, k] : mult) rep.classes.push_back({w, k});
    return rep;
}

/// Operator-level orthogonality by the active-pair rule. The operator norm
/// is a max of linear functionals S -> g(Sv) (or a max of quadratics through
/// a euclidean codomain), so one-sided derivatives in direction A straddle
/// zero exactly when the active values of A do.
inline bool op_is_bj_orthogonal(const Operator& t, const Operator& a) {
    detail::check_pair(t, a, "op_is_bj_orthogonal");
    detail::require_polyhedral(t.domain, "op_is_bj_orthogonal");
    if (detail::is_zero_operator(t))
        throw std::invalid_argument("op_is_bj_orthogonal: zero operator");
    const Rational n = op_norm_value(t);
    Rational mn, mx;
    bool first = true;
    auto feed = [&](const Rational& val) {
        if (first) {
            mn = mx = val;
            first = false;
        } else {
            if (val < mn) mn = val;
            if (val > mx) mx = val;
        }
    };
    if (t.codomain.kind == SpaceKind::polyhedral) {
        for (const auto& v : t.domain.vertices) {
            const Point tv = apply(t, v);
            const Point av = apply(a, v);
            for (const auto& g : t.codomain.facets)
                if (g(tv) == n) feed(g(av));
        }
    } else {
        for (const auto& v : t.domain.vertices) {
            const Point tv = apply(t, v);
            if (norm_sq(t.codomain, tv) == n) feed(inner(t.codomain, tv, apply(a, v)));
        }
    }
    return mn <= 0 && 0 <= mx;
}

namespace detail {

/// Exact value a + b*sqrt(d) with d a nonnegative integer.
struct Surd {
    Rational a, b;
    Integer d;
};

/// Sign of a + b*sqrt(d).
inline int surd_sign(const Rational& a, const Rational& b, const Integer& d) {
    if (b == 0 || d == 0) return sign(a);
    if (b > 0) {
        if (a >= 0) return 1;
        // a < 0: compare a^2 with b^2 d
        const Rational lhs = a * a, rhs = b * b * Rational(d, 1);
        return lhs < rhs ? 1 : (lhs == rhs ? 0 : -1);
    }
    if (a <= 0) return -1;
    const Rational lhs = a * a, rhs = b * b * Rational(d, 1);
    return lhs > rhs ? 1 : (lhs == rhs ? 0 : -1);
}

} // namespace detail

/// Independent operator-orthogonality route: exactly minimizes ||T + s A||
/// over s and compares with ||T||. Polyhedral codomain: a two-variable LP
/// over every (vertex, facet) pair. Euclidean codomain: the upper envelope
/// of the vertex parabolas ||Tv + s Av||^2 is minimized over the exact
/// candidate set (parabola vertices and pairwise crossing points, which live
/// in quadratic extensions of the rationals).
inline bool op_bj_oracle(const Operator& t, const Operator& a) {
    detail::check_pair(t, a, "op_bj_oracle");
    detail::require_polyhedral(t.domain, "op_bj_oracle");
    if (detail::is_zero_operator(t))
        throw std::invalid_argument("op_bj_oracle: zero operator");
    const Rational n = op_norm_value(t);

    if (t.codomain.kind == SpaceKind::polyhedral) {
        HPolytope region;
        region.dim = 2;   // (s, m)
        for (const auto& v : t.domain.vertices) {
            const Point tv = apply(t, v);
            const Point av = apply(a, v);
            for (const auto& g : t.codomain.facets)
                region.le.push_back({Functional{g(av), Rational(-1)}, -g(tv)});
        }
        VecQ obj{Rational(0), Rational(1)};
        auto lp = lp_solve(obj, region, LPSense::minimize);
        if (lp.status != LPStatus::optimal)
            throw std::logic_error("op_bj_oracle: norm minimization must be optimal");
        return *lp.optimum == n;
    }

    // One parabola per domain vertex: q_v(s) = ||Av||^2 s^2 + 2<Tv,Av> s + ||Tv||^2.
    struct Par {
        Rational qa, qb, qc;
    };
    std::vector<Par> ps;
    for (const auto& v : t.domain.vertices) {
        const Point tv = apply(t, v);
        const Point av = apply(a, v);
        ps.push_back({norm_sq(t.codomain, av), 2 * inner(t.codomain, tv, av), norm_sq(t.codomain, tv)});
    }

    std::vector<detail::Surd> cand;
    for (const auto& p : ps)
        if (p.qa > 0) cand.push_back({-p.qb / (2 * p.qa), Rational(0), Integer(0)});
    for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = i + 1; j < ps.size(); ++j) {
            const Rational da = ps[i].qa - ps[j].qa;
            const Rational db = ps[i].qb - ps[j].qb;
            const Rational dc = ps[i].qc - ps[j].qc;
            if (da == 0) {
                if (db != 0) cand.push_back({-dc / db, Rational(0), Integer(0)});
                continue;
            }
            const Rational disc = db * db - 4 * da * dc;
            if (disc < 0) continue;
            const Rational r = -db / (2 * da);
            if (disc == 0) {
                cand.push_back({r, Rational(0), Integer(0)});
                continue;
            }
            // sqrt(p/q) = sqrt(pq)/q
            const Integer p = numerator(disc), q = denominator(disc);
            const Rational s = Rational(1, 1) / (2 * da * Rational(q, 1));
            cand.push_back({r, s, p * q});
            cand.push_back({r, -s, p * q});
        }

    // The envelope minimum sits at a candidate; orthogonal exactly when no
    // candidate value drops below the value at s = 0 (which is ||T||^2).
    for (const auto& c : cand) {
        // evaluate max_v q_v at s = c.a + c.b sqrt(c.d); track the max as a surd
        Rational bestp, bestq;
        bool first = true;
        const Rational sq_rat = c.a * c.a + c.b * c.b * Rational(c.d, 1);
        const Rational sq_irr = 2 * c.a * c.b;
        for (const auto& p : ps) {
            const Rational vp = p.qa * sq_rat + p.qb * c.a + p.qc;
            const Rational vq = p.qa * sq_irr + p.qb * c.b;
            if (first || detail::surd_sign(vp - bestp, vq - bestq, c.d) > 0) {
                bestp = vp;
                bestq = vq;
                first = false;
            }
        }
        if (detail::surd_sign(bestp - n, bestq, c.d) < 0) return false;
    }
    return true;
}

/// Component counts of the attainment set of a 2D-domain operator, on the
/// sphere and after identifying antipodes. Cells are adjacent exactly when
/// they share a vertex (faces meet in faces, and a nonempty meet has a
/// vertex).
inline std::pair<size_t, size_t> mt_projective_components(const Operator& t) {
    detail::check_operator(t, "mt_projective_components");
    if (t.domain.dim != 2)
        throw std::invalid_argument("mt_projective_components: requires a 2-dimensional domain");
    const MTComplex m = norm_attainment_set(t);
    const size_t k = m.cells.size();
    std::vector<size_t> parent_s(k), parent_p(k);
    for (size_t i = 0; i < k; ++i) parent_s[i] = parent_p[i] = i;
    auto find = [](std::vector<size_t>& par, size_t x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
    };
    auto join = [&](std::vector<size_t>& par, size_t x, size_t y) {
        par[find(par, x)] = find(par, y);
    };
    auto meets = [](const std::vector<Point>& a, const std::vector<Point>& b) {
        for (const auto& p : a)
            if (std::binary_search(b.begin(), b.end(), p)) return true;
        return false;
    };
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
            if (meets(m.cells[i].vertices, m.cells[j].vertices)) {
                join(parent_s, i, j);
                join(parent_p, i, j);
            }
    for (size_t i = 0; i < k; ++i) {
        std::vector<Point> negi;
        for (const auto& p : m.cells[i].vertices) negi.push_back(-p);
        std::sort(negi.begin(), negi.end());
        for (size_t j = 0; j < k; ++j)
            if (meets(negi, m.cells[j].vertices)) join(parent_p, i, j);
    }
    std::set<size_t> roots_s, roots_p;
    for (size_t i = 0; i < k; ++i) {
        roots_s.insert(find(parent_s, i));
        roots_p.insert(find(parent_p, i));
    }
    return {roots_s.size(), roots_p.size()};
}

} // namespace bjortho
