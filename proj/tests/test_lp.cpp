#include <bjortho/lp.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace bjortho;

namespace {

Constraint le(std::initializer_list<Rational> coeffs, Rational rhs) {
    return {Functional(coeffs), std::move(rhs)};
}

} // namespace

TEST_CASE("lp_solve finds the optimum of a bounded program") {
    // minimize x + y  subject to  x >= 1, y >= 2
    HPolytope region;
    region.dim = 2;
    region.le.push_back(le({Rational(-1), Rational(0)}, Rational(-1)));
    region.le.push_back(le({Rational(0), Rational(-1)}, Rational(-2)));
    const auto out = lp_solve(VecQ{Rational(1), Rational(1)}, region, LPSense::minimize);
    REQUIRE(out.status == LPStatus::optimal);
    CHECK(*out.optimum == 3);
    REQUIRE(out.witness);
    CHECK((*out.witness)[0] == 1);
    CHECK((*out.witness)[1] == 2);
}

TEST_CASE("lp_solve reports unbounded programs") {
    HPolytope region;
    region.dim = 2;
    region.le.push_back(le({Rational(-1), Rational(0)}, Rational(0)));
    const auto out = lp_solve(VecQ{Rational(1), Rational(0)}, region, LPSense::maximize);
    CHECK(out.status == LPStatus::unbounded);
}

TEST_CASE("lp_solve reports infeasible programs") {
    HPolytope region;
    region.dim = 1;
    region.le.push_back(le({Rational(1)}, Rational(0)));
    region.le.push_back(le({Rational(-1)}, Rational(-1)));   // x >= 1 and x <= 0
    const auto out = lp_solve(VecQ{Rational(1)}, region, LPSense::maximize);
    CHECK(out.status == LPStatus::infeasible);
}

TEST_CASE("lp_solve handles equality constraints") {
    // maximize x - y  on the segment  x + y = 1, 0 <= x <= 1, 0 <= y <= 1
    HPolytope region;
    region.dim = 2;
    region.eq.push_back(le({Rational(1), Rational(1)}, Rational(1)));
    region.le.push_back(le({Rational(1), Rational(0)}, Rational(1)));
    region.le.push_back(le({Rational(-1), Rational(0)}, Rational(0)));
    region.le.push_back(le({Rational(0), Rational(1)}, Rational(1)));
    region.le.push_back(le({Rational(0), Rational(-1)}, Rational(0)));
    const auto out = lp_solve(VecQ{Rational(1), Rational(-1)}, region, LPSense::maximize);
    REQUIRE(out.status == LPStatus::optimal);
    CHECK(*out.optimum == 1);
    CHECK((*out.witness)[0] == 1);
    CHECK((*out.witness)[1] == 0);
}

TEST_CASE("lp_solve optimum lands on rationals, not roundings") {
    // maximize x  subject to  3x <= 1
    HPolytope region;
    region.dim = 1;
    region.le.push_back(le({Rational(3)}, Rational(1)));
    const auto out = lp_solve(VecQ{Rational(1)}, region, LPSense::maximize);
    REQUIRE(out.status == LPStatus::optimal);
    CHECK(*out.optimum == Rational(1, 3));
}

TEST_CASE("strict_cone_feasible separates open cones") {
    const Functional ex{Rational(1), Rational(0)};
    const Functional ey{Rational(0), Rational(1)};

    SECTION("orthant interior is nonempty") {
        const auto r = strict_cone_feasible({ex, ey}, 2);
        REQUIRE(r.feasible);
        REQUIRE(r.witness);
        CHECK(ex(*r.witness) > 0);
        CHECK(ey(*r.witness) > 0);
    }
    SECTION("opposite functionals kill the cone") {
        CHECK_FALSE(strict_cone_feasible({ex, Functional{Rational(-1), Rational(0)}}, 2).feasible);
    }
    SECTION("three functionals with a zero positive combination") {
        const Functional g{Rational(-1), Rational(1)};
        const Functional h{Rational(0), Rational(-1)};
        CHECK_FALSE(strict_cone_feasible({ex, g, h}, 2).feasible);
    }
    SECTION("empty generator list is trivially feasible") {
        const auto r = strict_cone_feasible({}, 3);
        CHECK(r.feasible);
        REQUIRE(r.witness);
        CHECK(is_zero(r.witness->x));
    }
    SECTION("any single nonzero functional is feasible, adding its negation is not") {
        std::mt19937_64 rng(8675309u);
        std::uniform_int_distribution<int> num(-9, 9);
        for (int i = 0; i < 50; ++i) {
            VecQ v(3), w(3);
            for (auto& c : v) c = Rational(num(rng));
            for (auto& c : w) c = Rational(num(rng));
            if (is_zero(v)) continue;
            const Functional f(v);
            auto alone = strict_cone_feasible({f}, 3);
            REQUIRE(alone.feasible);
            CHECK(f(*alone.witness) > 0);
            CHECK_FALSE(strict_cone_feasible({f, Functional(w), -f}, 3).feasible);
        }
    }
}

TEST_CASE("dual certificates accompany optimal outcomes") {
    HPolytope region;
    region.dim = 2;
    region.le.push_back(le({Rational(1), Rational(2)}, Rational(4)));
    region.le.push_back(le({Rational(3), Rational(1)}, Rational(6)));
    region.le.push_back(le({Rational(-1), Rational(0)}, Rational(0)));
    region.le.push_back(le({Rational(0), Rational(-1)}, Rational(0)));
    const auto out = lp_solve(VecQ{Rational(1), Rational(1)}, region, LPSense::maximize);
    REQUIRE(out.status == LPStatus::optimal);
    CHECK(*out.optimum == Rational(14, 5));
    REQUIRE(out.dual_le.size() == region.le.size());
    // The solver re-verifies the certificate; spot-check the combination here.
    Rational combined = 0;
    for (size_t i = 0; i < region.le.size(); ++i) {
        CHECK(out.dual_le[i] >= 0);
        combined += out.dual_le[i] * region.le[i].rhs;
    }
    CHECK(combined == *out.optimum);
}
