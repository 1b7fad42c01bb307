#pragma once

#include <bjortho/space.hpp>

#include <cstdlib>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bjortho {

/// Cap on concurrent LP tasks, from BJORTHO_THREADS (default 1).
inline size_t thread_cap() {
    if (const char* env = std::getenv("BJORTHO_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1 && v <= 256) return static_cast<size_t>(v);
    }
    return 1;
}

/// x is orthogonal to y when ||x + t y|| >= ||x|| for every real t.
/// Polyhedral rule: the functionals norming x must take both signs (or zero)
/// on y. Euclidean rule: the inner product vanishes. The zero vector is
/// orthogonal to everything.
inline bool is_bj_orthogonal(const Space& s, const Point& x, const Point& y) {
    detail::require_dim(s, x, "is_bj_orthogonal");
    detail::require_dim(s, y, "is_bj_orthogonal");
    if (s.kind == SpaceKind::euclidean) return inner(s, x, y) == 0;
    if (is_zero(x.x)) return true;
    const NormingFace nf = norming_face(s, x);
    Rational mn, mx;
    bool first = true;
    for (size_t j : nf.active) {
        const Rational v = s.facets[j](y);
        if (first) {
            mn = mx = v;
            first = false;
        } else {
            if (v < mn) mn = v;
            if (v > mx) mx = v;
        }
    }
    return mn <= 0 && 0 <= mx;
}

/// Independent decision route: exactly minimizes ||x + t y|| over t and
/// compares with ||x||. Polyhedral: a two-variable LP over all facets
/// (min s subject to f(x) + t f(y) <= s). Euclidean: the exact single
/// variable quadratic minimum. Used to cross-check is_bj_orthogonal.
inline bool bj_oracle(const Space& s, const Point& x, const Point& y) {
    detail::require_dim(s, x, "bj_oracle");
    detail::require_dim(s, y, "bj_oracle");
    if (s.kind == SpaceKind::euclidean) {
        const Rational nx = norm_sq(s, x);
        const Rational ny = norm_sq(s, y);
        if (ny == 0) return true;
        const Rational t = -inner(s, x, y) / ny;
        const Rational at_min = nx + 2 * t * inner(s, x, y) + t * t * ny;
        return at_min == nx;
    }
    HPolytope region;
    region.dim = 2;   // (t, s)
    for (const auto& f : s.facets) {
        // f(x) + t f(y) - s <= 0
        region.le.push_back({Functional{f(y), Rational(-1)}, -f(x)});
    }
    VecQ obj{Rational(0), Rational(1)};
    auto lp = lp_solve(obj, region, LPSense::minimize);
    if (lp.status != LPStatus::optimal) throw std::logic_error("bj_oracle: norm minimization must be optimal");
    return *lp.optimum == norm(s, x);
}

/// One-sided orthogonality: y is on the plus side when some norming
/// functional of x is nonnegative at y, on the minus side when some is
/// nonpositive. x orthogonal to y is exactly plus and minus together.
inline bool in_plus_set(const Space& s, const Point& x, const Point& y) {
    detail::require_dim(s, x, "in_plus_set");
    detail::require_dim(s, y, "in_plus_set");
    if (s.kind == SpaceKind::euclidean) return inner(s, x, y) >= 0;
    if (is_zero(x.x)) return true;
    const NormingFace nf = norming_face(s, x);
    for (size_t j : nf.active)
        if (s.facets[j](y) >= 0) return true;
    return false;
}

inline bool in_minus_set(const Space& s, const Point& x, const Point& y) {
    detail::require_dim(s, x, "in_minus_set");
    detail::require_dim(s, y, "in_minus_set");
    if (s.kind == SpaceKind::euclidean) return inner(s, x, y) <= 0;
    if (is_zero(x.x)) return true;
    const NormingFace nf = norming_face(s, x);
    for (size_t j : nf.active)
        if (s.facets[j](y) <= 0) return true;
    return false;
}

/// The orthogonality set of x, carried by its norming functionals (already
/// of dual norm one). Membership is the straddle test; the set is closed.
struct OrthoSet {
    Point base;
    std::vector<Functional> active;

    bool contains(const Point& y) const {
        Rational mn, mx;
        bool first = true;
        for (const auto& f : active) {
            const Rational v = f(y);
            if (first) {
                mn = mx = v;
                first = false;
            } else {
                if (v < mn) mn = v;
                if (v > mx) mx = v;
            }
        }
        return first || (mn <= 0 && 0 <= mx);
    }
};

inline OrthoSet ortho_set(const Space& s, const Point& x) {
    detail::require_polyhedral(s, "ortho_set");
    detail::require_dim(s, x, "ortho_set");
    const NormingFace nf = norming_face(s, x);
    OrthoSet o;
    o.base = x;
    for (size_t j : nf.active) o.active.push_back(s.facets[j]);
    return o;
}

/// For a vertex x of a two-dimensional space, x's orthogonality set is
/// K union -K for the closed cone K spanned by two unit generators, one in
/// the kernel of each facet at x. With the two active facets g1, g2 taken in
/// index order, K = { y : g2(y) >= 0, g1(y) <= 0 }.
struct NormalCone2D {
    Point v1, v2;

    bool contains(const Point& y) const {
        MatQ A(2, 2);
        A[0] = {v1[0], v2[0]};
        A[1] = {v1[1], v2[1]};
        auto sol = solve_linear(A, y.x);
        return sol && (*sol)[0] >= 0 && (*sol)[1] >= 0;
    }
};

inline NormalCone2D normal_cone_2d(const Space& s, const Point& x) {
    detail::require_polyhedral(s, "normal_cone_2d");
    if (s.dim != 2) throw std::invalid_argument("normal_cone_2d: requires dimension 2");
    detail::require_dim(s, x, "normal_cone_2d");
    if (std::find(s.vertices.begin(), s.vertices.end(), x) == s.vertices.end())
        throw std::invalid_argument("normal_cone_2d: " + to_string(x) + " is not a vertex");
    const NormingFace nf = norming_face(s, x);
    if (nf.active.size() != 2)
        throw std::invalid_argument("normal_cone_2d: vertex does not have exactly two facets");
    const Functional& g1 = s.facets[nf.active[0]];
    const Functional& g2 = s.facets[nf.active[1]];
    auto kernel_unit = [&](const Functional& g) {
        Point w{-g[1], g[0]};
        return Rational(1) / norm(s, w) * w;
    };
    Point v1 = kernel_unit(g1);   // sign fixed by g2(v1) >= 0
    if (g2(v1) < 0) v1 = -v1;
    Point v2 = kernel_unit(g2);   // sign fixed by g1(v2) <= 0
    if (g1(v2) > 0) v2 = -v2;
    return NormalCone2D{std::move(v1), std::move(v2)};
}

enum class CoverageVerdict { covered, not_covered };

/// Decision for "do the orthogonality sets of the family cover the space".
/// sign_vector and witness are present exactly for not_covered; the witness
/// avoids every set in the family.
struct CoverageCertificate {
    CoverageVerdict verdict = CoverageVerdict::covered;
    std::vector<int> sign_vector;
    std::optional<Point> witness;
    size_t checked_sign_vectors = 0;
};

/// A point y escapes every orthogonality set exactly when, for some sign
/// pattern eps, every norming functional of x_i keeps the strict sign eps_i
/// at y. By y <-> -y symmetry the first sign is pinned to +1, leaving
/// 2^(k-1) strict cone problems. Deterministic regardless of the thread
/// cap: all sign vectors are checked and the lexicographically smallest
/// witness is reported.
inline CoverageCertificate covers(const Space& s, const std::vector<Point>& family) {
    if (family.empty()) throw std::invalid_argument("covers: empty family");
    for (const auto& x : family) {
        detail::require_dim(s, x, "covers");
        if (is_zero(x.x)) throw std::invalid_argument("covers: zero vector in family");
    }

    if (s.kind == SpaceKind::euclidean) {
        // Finitely many hyperplanes never cover; pick a point off all of
        // them from the moment curve (each inner product is a nonzero
        // polynomial with bounded root count).
        CoverageCertificate cert;
        cert.verdict = CoverageVerdict::not_covered;
        for (Rational t = 1;; t += 1) {
            VecQ y(s.dim);
            Rational pw = 1;
            for (size_t i = 0; i < s.dim; ++i) {
                y[i] = pw;
                pw *= t;
            }
            Point cand{std::move(y)};
            bool clean = true;
            for (const auto& x : family)
                if (inner(s, x, cand) == 0) { clean = false; break; }
            if (clean) {
                cert.witness = std::move(cand);
                return cert;
            }
        }
    }

    const size_t k = family.size();
    if (k > 20) throw std::invalid_argument("covers: family too large (sign patterns explode)");
    std::vector<std::vector<Functional>> active(k);
    for (size_t i = 0; i < k; ++i) {
        const NormingFace nf = norming_face(s, family[i]);
        for (size_t j : nf.active) active[i].push_back(s.facets[j]);
    }

    const size_t total = size_t{1} << (k - 1);
    struct Hit {
        std::vector<int> eps;
        Point witness;
    };
    auto probe = [&](size_t lo, size_t hi) {
        std::vector<Hit> hits;
        for (size_t codes = lo; codes < hi; ++codes) {
            std::vector<int> eps(k, 1);
            for (size_t b = 0; b + 1 < k; ++b)
                if ((codes >> b) & 1) eps[b + 1] = -1;
            std::vector<Functional> gens;
            for (size_t i = 0; i < k; ++i)
                for (const auto& f : active[i]) gens.push_back(eps[i] == 1 ? f : -f);
            auto cone = strict_cone_feasible(gens, s.dim);
            if (cone.feasible) hits.push_back({std::move(eps), std::move(*cone.witness)});
        }
        return hits;
    };

    std::vector<Hit> hits;
    const size_t cap = std::min(thread_cap(), total);
    if (cap <= 1) {
        hits = probe(0, total);
    } else {
        std::vector<std::future<std::vector<Hit>>> parts;
        const size_t chunk = (total + cap - 1) / cap;
        for (size_t lo = 0; lo < total; lo += chunk)
            parts.push_back(std::async(std::launch::async, probe, lo, std::min(lo + chunk, total)));
        for (auto& p : parts)
            for (auto& h : p.get()) hits.push_back(std::move(h));
    }

    CoverageCertificate cert;
    cert.checked_sign_vectors = total;
    if (hits.empty()) {
        cert.verdict = CoverageVerdict::covered;
        return cert;
    }
    const Hit* best = &hits.front();
    for (const auto& h : hits)
        if (h.witness < best->witness) best = &h;
    cert.verdict = CoverageVerdict::not_covered;
    cert.sign_vector = best->eps;
    cert.witness = best->witness;
    return cert;
}

enum class PnVerdict { has_pn, lacks_pn };

/// Certificate for property P_n. lacks_pn carries the first covering family
/// found (vertex indices and points, antipodal representatives in canonical
/// order); has_pn carries a non-covered witness per checked family.
struct PnCertificate {
    PnVerdict verdict = PnVerdict::has_pn;
    std::vector<size_t> covering_family;          // vertex indices
    std::vector<Point> covering_points;
    std::vector<std::pair<std::vector<size_t>, Point>> family_witnesses;
    size_t families_checked = 0;
};

/// P_n holds when no n unit vectors have orthogonality sets covering the
/// space. Orthogonality sets only grow towards vertices of the carrying
/// face, so it is enough to check families of antipodal vertex classes.
/// Euclidean spaces have P_n for every n (hyperplanes never cover).
inline PnCertificate has_property_pn(const Space& s, size_t n) {
    if (n < 1) throw std::invalid_argument("has_property_pn: need n >= 1");
    PnCertificate cert;
    if (s.kind == SpaceKind::euclidean) {
        cert.verdict = PnVerdict::has_pn;
        return cert;
    }
    const auto reps = antipodal_class_reps(s);
    const size_t m = reps.size();
    const size_t pick = std::min(n, m);

    std::vector<size_t> idx(pick);
    for (size_t i = 0; i < pick; ++i) idx[i] = i;
    for (;;) {
        std::vector<Point> family;
        std::vector<size_t> vidx;
        for (size_t i : idx) {
            vidx.push_back(reps[i]);
            family.push_back(s.vertices[reps[i]]);
        }
        auto cov = covers(s, family);
        ++cert.families_checked;
        if (cov.verdict == CoverageVerdict::covered) {
            cert.verdict = PnVerdict::lacks_pn;
            cert.covering_family = std::move(vidx);
            cert.covering_points = std::move(family);
            return cert;
        }
        cert.family_witnesses.emplace_back(std::move(vidx), std::move(*cov.witness));

        // next combination
        size_t i = pick;
        while (i > 0) {
            --i;
            if (idx[i] + (pick - i) < m) {
                ++idx[i];
                for (size_t j = i + 1; j < pick; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) {
                cert.verdict = PnVerdict::has_pn;
                return cert;
            }
        }
        if (pick == 0) {
            cert.verdict = PnVerdict::has_pn;
            return cert;
        }
    }
}

struct CoveringNumber {
    size_t m = 0;
    std::vector<size_t> family;   // vertex indices
    std::vector<Point> points;
};

/// Smallest number of vertex classes whose orthogonality sets cover the
/// space. Finite for every polyhedral space: the union over all classes
/// always covers.
inline CoveringNumber min_covering_number(const Space& s) {
    detail::require_polyhedral(s, "min_covering_number");
    const auto reps = antipodal_class_reps(s);
    for (size_t m = 1; m <= reps.size(); ++m) {
        std::vector<size_t> idx(m);
        for (size_t i = 0; i < m; ++i) idx[i] = i;
        for (;;) {
            std::vector<Point> family;
            std::vector<size_t> vidx;
            for (size_t i : idx) {
                vidx.push_back(reps[i]);
                family.push_back(s.vertices[reps[i]]);
            }
            if (covers(s, family).verdict == CoverageVerdict::covered)
                return {m, std::move(vidx), std::move(family)};
            size_t i = m;
            bool advanced = false;
            while (i > 0) {
                --i;
                if (idx[i] + (m - i) < reps.size()) {
                    ++idx[i];
                    for (size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }
    throw std::logic_error("min_covering_number: full vertex class family failed to cover");
}

} // namespace bjortho
