#pragma once

#include <bjortho/linalg.hpp>

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bjortho {

struct Constraint {
    Functional f;
    Rational rhs;
};

/// Feasible region { x : f(x) <= rhs for all le, f(x) = rhs for all eq }.
/// Variables are free; nonnegativity, when wanted, is an explicit row.
struct HPolytope {
    size_t dim = 0;
    std::vector<Constraint> le;
    std::vector<Constraint> eq;
};

enum class LPStatus { optimal, infeasible, unbounded };
enum class LPSense { maximize, minimize };

/// Result of an exact LP solve. For optimal outcomes, `witness` attains
/// `optimum`, and `dual_le`/`dual_eq` certify optimality for the maximization
/// form of the program (the objective is negated internally when sense is
/// minimize): dual_le >= 0, sum_i dual_le[i]*le[i].f + sum_j dual_eq[j]*eq[j].f
/// equals the maximized objective vector, and the same combination of the
/// right-hand sides equals the maximized optimum. Both certificates are
/// re-verified before the result is returned.
struct LPOutcome {
    LPStatus status = LPStatus::infeasible;
    std::optional<Rational> optimum;
    std::optional<Point> witness;
    std::vector<Rational> dual_le;
    std::vector<Rational> dual_eq;
};

namespace detail {

// Dense simplex tableau over exact rationals, Bland's pivoting rule
// (smallest eligible column; ties in the ratio test go to the row whose
// basic variable has the smallest index). Bland's rule never cycles, so
// termination needs no perturbation.
struct Tableau {
    size_t ncols = 0;                 // structural columns, rhs excluded
    std::vector<VecQ> row;            // each of size ncols + 1, rhs last
    std::vector<size_t> basis;        // basic column per row
    VecQ obj;                         // reduced costs, size ncols + 1

    Rational& rhs(size_t r) { return row[r][ncols]; }

    void pivot(size_t r, size_t c) {
        const Rational inv = Rational(1) / row[r][c];
        for (auto& v : row[r]) v *= inv;
        for (size_t i = 0; i < row.size(); ++i) {
            if (i == r || row[i][c] == 0) continue;
            const Rational f = row[i][c];
            for (size_t j = 0; j <= ncols; ++j) row[i][j] -= f * row[r][j];
        }
        if (obj[c] != 0) {
            const Rational f = obj[c];
            for (size_t j = 0; j <= ncols; ++j) obj[j] -= f * row[r][j];
        }
        basis[r] = c;
    }

    void load_objective(const VecQ& cost) {
        obj.assign(ncols + 1, Rational(0));
        for (size_t j = 0; j < cost.size(); ++j) obj[j] = cost[j];
        for (size_t i = 0; i < row.size(); ++i) {
            const Rational f = obj[basis[i]];
            if (f == 0) continue;
            for (size_t j = 0; j <= ncols; ++j) obj[j] -= f * row[i][j];
        }
    }

    // Maximizes the loaded objective. Returns false on unboundedness.
    bool run(const std::vector<bool>& allowed) {
        for (;;) {
            size_t enter = ncols;
            for (size_t j = 0; j < ncols; ++j) {
                if (allowed[j] && obj[j] > 0) { enter = j; break; }
            }
            if (enter == ncols) return true;
            size_t leave = row.size();
            Rational best;
            for (size_t i = 0; i < row.size(); ++i) {
                if (row[i][enter] <= 0) continue;
                Rational ratio = rhs(i) / row[i][enter];
                if (leave == row.size() || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == row.size()) return false;
            pivot(leave, enter);
        }
    }
};

} // namespace detail

/// Exact LP solve over a free-variable region, with certified optimality.
inline LPOutcome lp_solve(const VecQ& objective, const HPolytope& region,
                          LPSense sense = LPSense::maximize) {
    const size_t d = region.dim;
    if (objective.size() != d) throw std::invalid_argument("lp_solve: objective dimension mismatch");
    for (const auto& c : region.le)
        if (c.f.dim() != d) throw std::invalid_argument("lp_solve: constraint dimension mismatch");
    for (const auto& c : region.eq)
        if (c.f.dim() != d) throw std::invalid_argument("lp_solve: constraint dimension mismatch");

    const VecQ cmax = sense == LPSense::maximize ? objective : neg(objective);
    const size_t n_le = region.le.size(), n_eq = region.eq.size();
    const size_t m = n_le + n_eq;

    // Standard form: x = p - q with p, q >= 0, one slack per inequality,
    // artificial variables where the slack cannot seed the basis.
    std::vector<int> flip(m, 1);
    std::vector<VecQ> arows(m);   // structural part, before artificials
    VecQ brhs(m);
    const size_t n_struct = 2 * d + n_le;
    for (size_t i = 0; i < m; ++i) {
        const bool is_le = i < n_le;
        const Constraint& c = is_le ? region.le[i] : region.eq[i - n_le];
        flip[i] = c.rhs < 0 ? -1 : 1;
        VecQ r(n_struct, Rational(0));
        for (size_t k = 0; k < d; ++k) {
            r[k] = flip[i] * c.f[k];
            r[d + k] = -r[k];
        }
        if (is_le) r[2 * d + i] = flip[i];
        arows[i] = std::move(r);
        brhs[i] = flip[i] * c.rhs;
    }

    detail::Tableau t;
    std::vector<size_t> art_of_row(m, SIZE_MAX);
    size_t n_art = 0;
    for (size_t i = 0; i < m; ++i)
        if (!(i < n_le && flip[i] == 1)) art_of_row[i] = n_art++;
    t.ncols = n_struct + n_art;
    t.row.assign(m, VecQ(t.ncols + 1, Rational(0)));
    t.basis.assign(m, 0);
    std::vector<size_t> live(m);   // original row index per tableau row
    for (size_t i = 0; i < m; ++i) {
        live[i] = i;
        for (size_t j = 0; j < n_struct; ++j) t.row[i][j] = arows[i][j];
        t.row[i][t.ncols] = brhs[i];
        if (art_of_row[i] == SIZE_MAX) {
            t.basis[i] = 2 * d + i;
        } else {
            t.basis[i] = n_struct + art_of_row[i];
            t.row[i][t.basis[i]] = 1;
        }
    }

    std::vector<bool> allowed(t.ncols, true);
    if (n_art > 0) {
        VecQ phase1(t.ncols, Rational(0));
        for (size_t j = n_struct; j < t.ncols; ++j) phase1[j] = -1;
        t.load_objective(phase1);
        t.run(allowed);
        if (t.obj[t.ncols] != 0) {
            LPOutcome out;
            out.status = LPStatus::infeasible;
            return out;
        }
        // Drive leftover artificials out of the basis; an all-zero row is a
        // redundant constraint and is dropped (its dual multiplier is zero).
        for (size_t i = 0; i < t.row.size();) {
            if (t.basis[i] < n_struct) { ++i; continue; }
            size_t c = n_struct;
            for (size_t j = 0; j < n_struct; ++j)
                if (t.row[i][j] != 0) { c = j; break; }
            if (c < n_struct) {
                t.pivot(i, c);
                ++i;
            } else {
                t.row.erase(t.row.begin() + i);
                t.basis.erase(t.basis.begin() + i);
                live.erase(live.begin() + i);
            }
        }
        for (size_t j = n_struct; j < t.ncols; ++j) allowed[j] = false;
    }

    VecQ cost(t.ncols, Rational(0));
    for (size_t k = 0; k < d; ++k) {
        cost[k] = cmax[k];
        cost[d + k] = -cmax[k];
    }
    t.load_objective(cost);
    if (!t.run(allowed)) {
        LPOutcome out;
        out.status = LPStatus::unbounded;
        return out;
    }

    VecQ xval(t.ncols, Rational(0));
    for (size_t i = 0; i < t.row.size(); ++i) xval[t.basis[i]] = t.rhs(i);
    Point x{VecQ(d)};
    for (size_t k = 0; k < d; ++k) x[k] = xval[k] - xval[d + k];
    const Rational opt_max = dot(cmax, x.x);

    // Witness must satisfy the region exactly.
    for (const auto& c : region.le)
        if (c.f(x) > c.rhs) throw std::logic_error("lp_solve: witness violates a constraint");
    for (const auto& c : region.eq)
        if (c.f(x) != c.rhs) throw std::logic_error("lp_solve: witness violates an equality");

    // Dual certificate: y solves y^T B = c_B over the surviving rows (dropped
    // redundant rows get multiplier zero), then y is mapped back through the
    // sign flips and checked against strong duality. The simplex optimality
    // conditions make the checks pass; a failure here is an internal bug.
    const size_t nb = t.basis.size();
    MatQ Bt(nb, nb);
    VecQ cb(nb);
    for (size_t i = 0; i < nb; ++i) {
        const size_t col = t.basis[i];
        for (size_t s = 0; s < nb; ++s) {
            const size_t r = live[s];
            Rational v = 0;
            if (col < n_struct) v = arows[r][col];
            else if (art_of_row[r] == col - n_struct) v = 1;
            Bt[i][s] = v;
        }
        cb[i] = cost[col];
    }
    auto y = solve_linear(Bt, cb);
    if (!y) throw std::logic_error("lp_solve: dual system inconsistent");
    VecQ yfull(m, Rational(0));
    for (size_t s = 0; s < nb; ++s) yfull[live[s]] = (*y)[s];

    LPOutcome out;
    out.status = LPStatus::optimal;
    out.witness = x;
    out.optimum = sense == LPSense::maximize ? opt_max : -opt_max;
    out.dual_le.resize(n_le);
    out.dual_eq.resize(n_eq);
    VecQ combo(d, Rational(0));
    Rational val = 0;
    for (size_t r = 0; r < m; ++r) {
        const Rational yr = flip[r] * yfull[r];
        const bool is_le = r < n_le;
        const Constraint& c = is_le ? region.le[r] : region.eq[r - n_le];
        if (is_le) {
            if (yr < 0) throw std::logic_error("lp_solve: negative dual on an inequality");
            out.dual_le[r] = yr;
        } else {
            out.dual_eq[r - n_le] = yr;
        }
        for (size_t k = 0; k < d; ++k) combo[k] += yr * c.f[k];
        val += yr * c.rhs;
    }
    if (combo != cmax) throw std::logic_error("lp_solve: dual combination does not match the objective");
    if (val != opt_max) throw std::logic_error("lp_solve: dual objective does not match the optimum");
    return out;
}

struct ConeFeasibility {
    bool feasible = false;
    std::optional<Point> witness;   // strict: f(witness) > 0 for every generator
};

/// Decides whether some y has f(y) > 0 for every functional in the list.
/// Solved as: maximize t subject to f_j(y) >= t and -1 <= y_i <= 1; the open
/// cone is nonempty exactly when the optimum is positive. The box bound only
/// normalizes scale (the cone is invariant under positive scaling), so the
/// LP always has a finite optimum.
inline ConeFeasibility strict_cone_feasible(const std::vector<Functional>& generators, size_t dim) {
    for (const auto& g : generators)
        if (g.dim() != dim) throw std::invalid_argument("strict_cone_feasible: dimension mismatch");
    if (generators.empty()) {
        ConeFeasibility r;
        r.feasible = true;
        r.witness = Point(VecQ(dim, Rational(0)));
        return r;
    }
    HPolytope region;
    region.dim = dim + 1;   // (y, t)
    for (const auto& g : generators) {
        VecQ row(dim + 1, Rational(0));
        for (size_t k = 0; k < dim; ++k) row[k] = -g[k];
        row[dim] = 1;
        region.le.push_back({Functional(std::move(row)), Rational(0)});
    }
    for (size_t k = 0; k < dim; ++k) {
        VecQ up(dim + 1, Rational(0)), dn(dim + 1, Rational(0));
        up[k] = 1;
        dn[k] = -1;
        region.le.push_back({Functional(std::move(up)), Rational(1)});
        region.le.push_back({Functional(std::move(dn)), Rational(1)});
    }
    VecQ obj(dim + 1, Rational(0));
    obj[dim] = 1;
    auto lp = lp_solve(obj, region, LPSense::maximize);
    if (lp.status != LPStatus::optimal) throw std::logic_error("strict_cone_feasible: box LP must be optimal");
    ConeFeasibility r;
    if (*lp.optimum > 0) {
        r.feasible = true;
        VecQ y(lp.witness->x.begin(), lp.witness->x.begin() + dim);
        r.witness = Point(std::move(y));
    }
    return r;
}

} // namespace bjortho
