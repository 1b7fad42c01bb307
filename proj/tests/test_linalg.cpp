#include <bjortho/linalg.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace bjortho;

namespace {

MatQ mat(size_t r, size_t c, std::initializer_list<int> entries) {
    MatQ m(r, c);
    auto it = entries.begin();
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m[i][j] = Rational(*it++);
    return m;
}

} // namespace

TEST_CASE("solve_linear on a regular system") {
    const MatQ a = mat(2, 2, {2, 1, 1, 3});
    const VecQ b{Rational(5), Rational(10)};
    const auto x = solve_linear(a, b);
    REQUIRE(x);
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 3);
}

TEST_CASE("solve_linear rejects inconsistent systems") {
    const MatQ a = mat(2, 2, {1, 1, 2, 2});
    CHECK_FALSE(solve_linear(a, VecQ{Rational(1), Rational(3)}));
}

TEST_CASE("inverse exists exactly when the matrix is regular") {
    const MatQ a = mat(2, 2, {1, 2, 3, 5});
    const auto inv = inverse(a);
    REQUIRE(inv);
    CHECK(mat_mul(a, *inv) == MatQ::identity(2));
    CHECK_FALSE(inverse(mat(2, 2, {1, 2, 2, 4})));
}

TEST_CASE("rank and nullspace are consistent") {
    const MatQ a = mat(3, 3, {1, 2, 3, 2, 4, 6, 1, 0, 1});
    CHECK(rank(a) == 2);
    const auto ns = nullspace(a);
    REQUIRE(ns.size() == 1);
    CHECK(is_zero(mat_vec(a, ns[0])));
    CHECK_FALSE(is_zero(ns[0]));
}

TEST_CASE("transpose and multiplication") {
    const MatQ a = mat(2, 3, {1, 2, 3, 4, 5, 6});
    const MatQ at = transpose(a);
    CHECK(at.rows == 3);
    CHECK(at[0][1] == 4);
    const MatQ prod = mat_mul(a, at);
    CHECK(prod[0][0] == 14);
    CHECK(prod[1][0] == 32);
}

TEST_CASE("point and functional ordering is lexicographic") {
    const Point p{Rational(1), Rational(0)};
    const Point q{Rational(1), Rational(1)};
    CHECK(p < q);
    CHECK(-q < p);
    const Functional f{Rational(1), Rational(-1)};
    CHECK(f(q) == 0);
    CHECK(f(p) == 1);
}
