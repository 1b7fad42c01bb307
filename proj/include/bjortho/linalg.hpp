#pragma once

#include <bjortho/rational.hpp>

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

namespace bjortho {

using VecQ = std::vector<Rational>;

namespace detail {

// The backing rational type orders with < only; build the three-way result.
inline std::strong_ordering cmp(const Rational& a, const Rational& b) {
    if (a < b) return std::strong_ordering::less;
    if (b < a) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

inline std::strong_ordering lex_cmp(const VecQ& a, const VecQ& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end(), cmp);
}

} // namespace detail

/// A point of the space, in coordinates of the standard basis.
struct Point {
    VecQ x;

    Point() = default;
    explicit Point(VecQ v) : x(std::move(v)) {}
    Point(std::initializer_list<Rational> v) : x(v) {}

    size_t dim() const { return x.size(); }
    const Rational& operator[](size_t i) const { return x[i]; }
    Rational& operator[](size_t i) { return x[i]; }

    friend bool operator==(const Point&, const Point&) = default;
    friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
        return detail::lex_cmp(a.x, b.x);
    }
};

/// A linear functional, in coordinates of the dual standard basis.
struct Functional {
    VecQ a;

    Functional() = default;
    explicit Functional(VecQ v) : a(std::move(v)) {}
    Functional(std::initializer_list<Rational> v) : a(v) {}

    size_t dim() const { return a.size(); }
    const Rational& operator[](size_t i) const { return a[i]; }
    Rational& operator[](size_t i) { return a[i]; }

    Rational operator()(const Point& p) const {
        assert(a.size() == p.x.size());
        Rational s = 0;
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * p.x[i];
        return s;
    }

    friend bool operator==(const Functional&, const Functional&) = default;
    friend std::strong_ordering operator<=>(const Functional& f, const Functional& g) {
        return detail::lex_cmp(f.a, g.a);
    }
};

inline VecQ add(const VecQ& a, const VecQ& b) {
    assert(a.size() == b.size());
    VecQ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline VecQ sub(const VecQ& a, const VecQ& b) {
    assert(a.size() == b.size());
    VecQ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline VecQ scale(const Rational& c, const VecQ& a) {
    VecQ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline VecQ neg(const VecQ& a) { return scale(Rational(-1), a); }

inline Rational dot(const VecQ& a, const VecQ& b) {
    assert(a.size() == b.size());
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero(const VecQ& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& q) { return q == 0; });
}

inline Point operator+(const Point& p, const Point& q) { return Point(add(p.x, q.x)); }
inline Point operator-(const Point& p, const Point& q) { return Point(sub(p.x, q.x)); }
inline Point operator-(const Point& p) { return Point(neg(p.x)); }
inline Point operator*(const Rational& c, const Point& p) { return Point(scale(c, p.x)); }
inline Functional operator-(const Functional& f) { return Functional(neg(f.a)); }
inline Functional operator*(const Rational& c, const Functional& f) { return Functional(scale(c, f.a)); }

inline std::string to_string(const VecQ& v) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ')';
    return os.str();
}

inline std::string to_string(const Point& p) { return to_string(p.x); }
inline std::string to_string(const Functional& f) { return to_string(f.a); }

/// Dense rational matrix, row major.
struct MatQ {
    size_t rows = 0, cols = 0;
    std::vector<VecQ> m;

    MatQ() = default;
    MatQ(size_t r, size_t c) : rows(r), cols(c), m(r, VecQ(c, Rational(0))) {}

    VecQ& operator[](size_t r) { return m[r]; }
    const VecQ& operator[](size_t r) const { return m[r]; }

    static MatQ identity(size_t n) {
        MatQ I(n, n);
        for (size_t i = 0; i < n; ++i) I[i][i] = 1;
        return I;
    }

    friend bool operator==(const MatQ&, const MatQ&) = default;
};

inline VecQ mat_vec(const MatQ& A, const VecQ& v) {
    assert(A.cols == v.size());
    VecQ r(A.rows, Rational(0));
    for (size_t i = 0; i < A.rows; ++i) r[i] = dot(A[i], v);
    return r;
}

inline MatQ mat_mul(const MatQ& A, const MatQ& B) {
    assert(A.cols == B.rows);
    MatQ C(A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t k = 0; k < A.cols; ++k)
            if (A[i][k] != 0)
                for (size_t j = 0; j < B.cols; ++j) C[i][j] += A[i][k] * B[k][j];
    return C;
}

inline MatQ transpose(const MatQ& A) {
    MatQ T(A.cols, A.rows);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j) T[j][i] = A[i][j];
    return T;
}

namespace detail {

// Row echelon reduction in place; returns pivot column per pivot row.
inline std::vector<size_t> row_reduce(MatQ& A) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < A.cols && r < A.rows; ++c) {
        size_t p = r;
        while (p < A.rows && A[p][c] == 0) ++p;
        if (p == A.rows) continue;
        std::swap(A.m[p], A.m[r]);
        const Rational inv = Rational(1) / A[r][c];
        for (size_t j = c; j < A.cols; ++j) A[r][j] *= inv;
        for (size_t i = 0; i < A.rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            const Rational f = A[i][c];
            for (size_t j = c; j < A.cols; ++j) A[i][j] -= f * A[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace detail

inline size_t rank(MatQ A) { return detail::row_reduce(A).size(); }

/// Solves A x = b exactly. Empty result means the system is inconsistent;
/// with full column rank the solution is unique, otherwise one solution
/// (free variables pinned to zero) is returned.
inline std::optional<VecQ> solve_linear(const MatQ& A, const VecQ& b) {
    assert(A.rows == b.size());
    MatQ aug(A.rows, A.cols + 1);
    for (size_t i = 0; i < A.rows; ++i) {
        aug[i] = A[i];
        aug[i].push_back(b[i]);
    }
    auto pivots = detail::row_reduce(aug);
    // A pivot in the rhs column marks inconsistency.
    if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
    VecQ x(A.cols, Rational(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][A.cols];
    return x;
}

/// Basis of the kernel of A.
inline std::vector<VecQ> nullspace(MatQ A) {
    auto pivots = detail::row_reduce(A);
    std::vector<bool> is_pivot(A.cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<VecQ> basis;
    for (size_t c = 0; c < A.cols; ++c) {
        if (is_pivot[c]) continue;
        VecQ v(A.cols, Rational(0));
        v[c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -A[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::optional<MatQ> inverse(const MatQ& A) {
    assert(A.rows == A.cols);
    const size_t n = A.rows;
    MatQ aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = A[i][j];
        aug[i][n + i] = 1;
    }
    auto pivots = detail::row_reduce(aug);
    if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
    MatQ inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

} // namespace bjortho
