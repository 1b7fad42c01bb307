#pragma once

#include <bjortho/operators.hpp>

#include <future>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bjortho {

/// The instance lies outside what the decision procedure handles (e.g. the
/// attainment set has cells on which T is not constant, or the image
/// orthogonality sets cover the codomain). Distinct from a hypothesis that
/// is checked and found false.
struct unsupported_instance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A stated hypothesis of the construction fails on the given data.
struct hypothesis_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Search for x in the attainment set with Tx orthogonal to Ax. Complete
/// over closed cells: for every cell and every ordered pair (g_i, g_j) of
/// codomain facets active on the cell, test feasibility of
/// { x in cell, g_i(Ax) <= 0, g_j(Ax) >= 0 }. A feasible x keeps g_i, g_j
/// norming for Tx, so the two values straddle zero and Tx is orthogonal to
/// Ax. A boundary witness with larger active set is caught on the smaller
/// cell that carries that set (cells are closed under intersection).
/// Euclidean codomain: per cell, T is constant (= w) and <w, Ax> = 0 is one
/// linear equation over the cell. The first witness in cell order is
/// re-verified against the independent oracle before being returned.
inline std::optional<Point> witness_exists(const Operator& t, const Operator& a) {
    detail::check_pair(t, a, "witness_exists");
    if (detail::is_zero_operator(t))
        throw std::invalid_argument("witness_exists: zero operator");
    const MTComplex m = norm_attainment_set(t);

    auto scan_cell = [&](const MTCell& cell) -> std::optional<Point> {
        if (t.codomain.kind == SpaceKind::polyhedral) {
            for (size_t i : cell.active_codomain)
                for (size_t j : cell.active_codomain) {
                    const Functional gi_a = detail::pullback(a.matrix, t.codomain.facets[i]);
                    const Functional gj_a = detail::pullback(a.matrix, t.codomain.facets[j]);
                    HPolytope region = cell.carrier;
                    region.le.push_back({gi_a, Rational(0)});
                    region.le.push_back({-gj_a, Rational(0)});
                    VecQ obj(region.dim, Rational(0));
                    auto lp = lp_solve(obj, region, LPSense::maximize);
                    if (lp.status == LPStatus::optimal) return lp.witness;
                }
            return std::nullopt;
        }
        // constant image w on the cell; <w, Ax> = 0 is linear in x
        const Functional gw(mat_vec(t.codomain.gram, cell.image->x));
        HPolytope region = cell.carrier;
        region.eq.push_back({detail::pullback(a.matrix, gw), Rational(0)});
        VecQ obj(region.dim, Rational(0));
        auto lp = lp_solve(obj, region, LPSense::maximize);
        if (lp.status == LPStatus::optimal) return lp.witness;
        return std::nullopt;
    };

    std::optional<Point> found;
    const size_t cap = thread_cap();
    if (cap <= 1) {
        for (const auto& cell : m.cells)
            if ((found = scan_cell(cell))) break;
    } else {
        std::vector<std::future<std::optional<Point>>> parts;
        for (const auto& cell : m.cells)
            parts.push_back(std::async(std::launch::async, scan_cell, std::cref(cell)));
        for (auto& p : parts) {
            auto r = p.get();
            if (r && !found) found = std::move(r);
        }
    }
    if (!found) return std::nullopt;

    const Point& x = *found;
    if (norm(t.domain, x) != 1 ||
        detail::image_gauge(t.codomain, apply(t, x)) != m.op_norm ||
        !bj_oracle(t.codomain, apply(t, x), apply(a, x)))
        throw std::logic_error("witness_exists: candidate failed independent re-verification");
    return found;
}

/// A direction z avoided by the orthogonality set of every attained image,
/// or none when those sets cover the codomain. Requires T constant on every
/// attainment cell (finitely many images up to sign).
inline std::optional<Point> find_nonorthogonal_direction(const Operator& t, const MTComplex& m) {
    detail::check_operator(t, "find_nonorthogonal_direction");
    if (detail::is_zero_operator(t))
        throw std::invalid_argument("find_nonorthogonal_direction: zero operator");
    const ImageClassReport rep = image_classes(t, m);
    if (!rep.all_cells_constant)
        throw unsupported_instance(
            "find_nonorthogonal_direction: an attainment cell has non-constant image");
    std::vector<Point> reps;
    for (const auto& c : rep.classes) reps.push_back(c.rep);
    const CoverageCertificate cov = covers(t.codomain, reps);
    if (cov.verdict == CoverageVerdict::covered) return std::nullopt;
    return cov.witness;
}

/// Data for the rank-one perturbation construction: a basis x_1..x_n of the
/// domain with x_1, x_2 attaining the norm, scale factors for the remaining
/// basis images, and optionally the direction z (auto-found when absent).
struct CounterexampleSpec {
    std::vector<Point> basis;
    std::vector<Rational> alphas;   // used when z lies on opposite sides of Tx_1, Tx_2
    std::vector<Rational> betas;    // used when z lies on the same side
    std::optional<Point> z;
};

/// Builds A with values in span{z} and verifies that T is orthogonal to A
/// while no attainment point witnesses it. Same-side case: Ax_1 = z,
/// Ax_2 = -z, Ax_i = beta_i z; opposite-side: Ax_1 = Ax_2 = z, Ax_i =
/// alpha_i z. On every attainment cell the coefficient of z in Au must keep
/// one strict sign (checked at cell vertices; the coefficient is linear), so
/// no Tu is orthogonal to Au. Both verification routes must pass or the
/// construction throws.
inline Operator construct_counterexample(const Operator& t, const CounterexampleSpec& spec) {
    detail::check_operator(t, "construct_counterexample");
    if (detail::is_zero_operator(t))
        throw std::invalid_argument("construct_counterexample: zero operator");
    const size_t n = t.domain.dim;
    if (n < 2) throw hypothesis_violation("construct_counterexample: domain dimension must be at least 2");
    if (spec.basis.size() != n)
        throw hypothesis_violation("construct_counterexample: basis size must equal the domain dimension");
    for (const auto& p : spec.basis) detail::require_dim(t.domain, p, "construct_counterexample");

    MatQ b(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) b[i][j] = spec.basis[j][i];
    const auto binv = inverse(b);
    if (!binv) throw hypothesis_violation("construct_counterexample: basis does not span the domain");

    const MTComplex m = norm_attainment_set(t);
    for (size_t i : {size_t{0}, size_t{1}})
        if (!attains_norm(t, m.op_norm, spec.basis[i]))
            throw hypothesis_violation("construct_counterexample: " + to_string(spec.basis[i]) +
                                       " does not attain the operator norm");

    const ImageClassReport rep = image_classes(t, m);
    if (!rep.all_cells_constant)
        throw unsupported_instance("construct_counterexample: an attainment cell has non-constant image");

    Point z;
    if (spec.z) {
        z = *spec.z;
        detail::require_dim(t.codomain, z, "construct_counterexample");
    } else {
        auto found = find_nonorthogonal_direction(t, m);
        if (!found)
            throw unsupported_instance(
                "construct_counterexample: image orthogonality sets cover the codomain");
        z = *found;
    }
    for (const auto& c : rep.classes)
        if (is_bj_orthogonal(t.codomain, c.rep, z))
            throw hypothesis_violation("construct_counterexample: z is orthogonal to attained image " +
                                       to_string(c.rep));

    const Point tx1 = apply(t, spec.basis[0]);
    const Point tx2 = apply(t, spec.basis[1]);
    const bool plus1 = in_plus_set(t.codomain, tx1, z);
    const bool plus2 = in_plus_set(t.codomain, tx2, z);

    VecQ gamma_basis(n);   // coefficient of z in Au, in basis coordinates
    std::vector<Point> images(n, Point(VecQ(t.codomain.dim, Rational(0))));
    images[0] = z;
    gamma_basis[0] = 1;
    if (plus1 == plus2) {
        if (spec.betas.size() != n - 2)
            throw hypothesis_violation("construct_counterexample: need exactly dim-2 beta values");
        images[1] = -z;
        gamma_basis[1] = -1;
        for (size_t i = 2; i < n; ++i) {
            images[i] = spec.betas[i - 2] * z;
            gamma_basis[i] = spec.betas[i - 2];
        }
    } else {
        if (spec.alphas.size() != n - 2)
            throw hypothesis_violation("construct_counterexample: need exactly dim-2 alpha values");
        images[1] = z;
        gamma_basis[1] = 1;
        for (size_t i = 2; i < n; ++i) {
            images[i] = spec.alphas[i - 2] * z;
            gamma_basis[i] = spec.alphas[i - 2];
        }
    }

    // gamma as a functional of u: gamma_basis composed with basis coordinates
    VecQ gcoef(n, Rational(0));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) gcoef[j] += gamma_basis[i] * (*binv)[i][j];
    const Functional gamma(std::move(gcoef));

    for (size_t ci = 0; ci < m.cells.size(); ++ci) {
        const MTCell& cell = m.cells[ci];
        if (!cell.maximal) continue;
        int s = 0;
        for (const auto& w : cell.vertices) {
            const int sw = sign(gamma(w));
            if (sw == 0 || (s != 0 && sw != s)) {
                std::ostringstream msg;
                msg << "construct_counterexample: coefficient of z vanishes on attainment cell "
                    << ci << " (vertex " << to_string(w) << ")";
                throw hypothesis_violation(msg.str());
            }
            s = sw;
        }
    }

    MatQ zmat(t.codomain.dim, n);
    for (size_t i = 0; i < t.codomain.dim; ++i)
        for (size_t j = 0; j < n; ++j) zmat[i][j] = images[j][i];
    Operator a{mat_mul(zmat, *binv), t.domain, t.codomain, "counterexample"};

    if (!op_is_bj_orthogonal(t, a) || !op_bj_oracle(t, a))
        throw std::logic_error("construct_counterexample: built operator is not orthogonal to T");
    if (witness_exists(t, a))
        throw std::logic_error("construct_counterexample: built operator admits an attainment witness");
    return a;
}

/// 2D decision: T has the pointwise-witness property exactly when the
/// attainment set is connected after identifying antipodes.
inline bool bs_check_2d(const Operator& t) {
    detail::check_operator(t, "bs_check_2d");
    if (t.domain.dim != 2)
        throw std::invalid_argument("bs_check_2d: requires a 2-dimensional domain");
    return mt_projective_components(t).second == 1;
}

/// 2D sufficient test for failure: some attainment pair x != +-y whose
/// normalized sum and difference both leave the attainment set. Searched
/// over cell vertices.
inline bool corollary_midpoint_predicate(const Operator& t) {
    detail::check_operator(t, "corollary_midpoint_predicate");
    if (t.domain.dim != 2)
        throw std::invalid_argument("corollary_midpoint_predicate: requires a 2-dimensional domain");
    const MTComplex m = norm_attainment_set(t);
    std::vector<Point> samples;
    for (const auto& c : m.cells)
        for (const auto& v : c.vertices) samples.push_back(v);
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

    auto outside_mt = [&](const Point& p) {
        const Point unit = Rational(1) / norm(t.domain, p) * p;
        return !attains_norm(t, m.op_norm, unit);
    };
    for (size_t i = 0; i < samples.size(); ++i)
        for (size_t j = i + 1; j < samples.size(); ++j) {
            const Point& x = samples[i];
            const Point& y = samples[j];
            if (x == y || x == -y) continue;
            if (outside_mt(x + y) && outside_mt(x - y)) return true;
        }
    return false;
}

enum class BSConclusion { satisfies_bs_instance, violates_bs };

/// Verdict for one pair (T, A): whether T is orthogonal to A, and if so
/// whether some attainment point witnesses it pointwise.
struct BSVerdict {
    bool t_orth_a = false;
    std::optional<Point> witness;
    BSConclusion conclusion = BSConclusion::satisfies_bs_instance;
};

inline BSVerdict bs_instance_verdict(const Operator& t, const Operator& a) {
    BSVerdict v;
    v.t_orth_a = op_is_bj_orthogonal(t, a);
    if (!v.t_orth_a) return v;
    v.witness = witness_exists(t, a);
    v.conclusion = v.witness ? BSConclusion::satisfies_bs_instance : BSConclusion::violates_bs;
    return v;
}

enum class CorollaryStatus { violates_bs, instance_unsatisfied, inconclusive };

struct CorollaryResult {
    CorollaryStatus status = CorollaryStatus::inconclusive;
    std::optional<Operator> evidence;
    std::string detail;
};

/// One-directional criterion: when the attainment set has at least four
/// points, at most m image classes, the codomain keeps P_m, and the
/// counterexample construction succeeds, the pointwise-witness property
/// fails (evidence returned). A definitively failed hypothesis yields
/// instance_unsatisfied; anything unverifiable yields inconclusive, never a
/// positive verdict.
inline CorollaryResult corollary_pn_bs(const Operator& t, size_t m_classes,
                                       const CounterexampleSpec& spec) {
    detail::check_operator(t, "corollary_pn_bs");
    CorollaryResult out;
    if (detail::is_zero_operator(t)) {
        out.status = CorollaryStatus::instance_unsatisfied;
        out.detail = "zero operator";
        return out;
    }
    const MTComplex m = norm_attainment_set(t);
    const ImageClassReport rep = image_classes(t, m);
    if (!rep.all_cells_constant) {
        out.status = CorollaryStatus::inconclusive;
        out.detail = "attainment cells with non-constant image";
        return out;
    }

    bool infinite = false;
    size_t points = 0;
    for (const auto& c : m.cells)
        if (c.maximal) {
            if (c.dim >= 1) infinite = true;
            ++points;
        }
    if (!infinite && points < 4) {
        out.status = CorollaryStatus::instance_unsatisfied;
        out.detail = "attainment set has fewer than four points";
        return out;
    }
    if (rep.classes.size() > m_classes) {
        out.status = CorollaryStatus::instance_unsatisfied;
        out.detail = "more than m image classes";
        return out;
    }
    if (has_property_pn(t.codomain, m_classes).verdict != PnVerdict::has_pn) {
        out.status = CorollaryStatus::instance_unsatisfied;
        out.detail = "codomain lacks the required covering property";
        return out;
    }
    try {
        out.evidence = construct_counterexample(t, spec);
        out.status = CorollaryStatus::violates_bs;
        out.detail = "counterexample constructed and verified";
    } catch (const unsupported_instance& e) {
        out.status = CorollaryStatus::inconclusive;
        out.detail = e.what();
    } catch (const hypothesis_violation& e) {
        out.status = CorollaryStatus::inconclusive;
        out.detail = e.what();
    }
    return out;
}

} // namespace bjortho
