#include "doctest.h"

#include "generators.hpp"
#include "thetaform/basis.hpp"
#include "thetaform/operators.hpp"

using namespace thetaform;

namespace {

const CoeffExpr u = CoeffExpr::u();
const CoeffExpr lam = CoeffExpr::lambda();
const CoeffExpr g = CoeffExpr::function("g");
const CoeffExpr G = (u - lam) * g;
ThetaPoly th(int s) { return ThetaPoly::theta(s); }
ThetaPoly uj(int s) { return ThetaPoly::u(s); }

} // namespace

TEST_CASE("D_lambda characteristics") {
    const EvolutionaryOp D = make_Dlambda();
    const ThetaPoly x_u = G * th(1) + (Rational(1, 2) * ddu(G)) * (uj(1) * th(0));
    CHECK(D(ThetaPoly(u)) == x_u);
    CHECK(D(th(0)) == (Rational(1, 2) * ddu(G)) * (th(0) * th(1)));

    const EvolutionaryOp D1 = make_D1();
    const EvolutionaryOp D2 = make_D2();
    for (const ThetaPoly& a : {uj(1), th(2), uj(2) * th(1)}) {
        CHECK((D2(a) - lam * D1(a) - D(a)).is_zero());
    }
    const EvolutionaryOp pencil = EvolutionaryOp::combine(1, D2, -lam, D1);
    CHECK(pencil.x_u() == D.x_u());
    CHECK(pencil.x_theta() == D.x_theta());
}

TEST_CASE("apply") {
    const EvolutionaryOp D = make_Dlambda();
    const CoeffExpr f = CoeffExpr::function("c");
    CHECK(D(ThetaPoly(f)) == ddu(f) * D.x_u());
    // the pencil bivector is annihilated exactly
    CHECK(D(G * (th(0) * th(1))).is_zero());
    const EvolutionaryOp D1 = make_D1();
    CHECK(D1(uj(1)) == total_derivative(g * th(1) + (Rational(1, 2) * ddu(g)) * (uj(1) * th(0))));
    // bidegree (d, p) -> (d + 1, p + 1)
    const ThetaPoly a = uj(2) * th(0) * th(1);
    for (const auto& [d, p] : D(a).bidegrees()) {
        CHECK(d == 4);
        CHECK(p == 3);
    }
    // the total derivative is the even evolutionary field with characteristics (u1, theta1)
    const EvolutionaryOp dx(uj(1), th(1), false);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
        const ThetaPoly r = testing::random_poly(rng, 3, 3);
        CHECK(dx(r) == total_derivative(r));
    }
}

TEST_CASE("operator identities on a small basis") {
    const EvolutionaryOp D = make_Dlambda();
    const CoeffExpr f = CoeffExpr::function("f");
    for (int d = 0; d <= 3; ++d) {
        for (const Monomial& m : enumerate_monomials({.degree = d, .max_jet = 3})) {
            const ThetaPoly a = ThetaPoly::term(m, f);
            CHECK(D(D(a)).is_zero());
            CHECK(D(total_derivative(a)) == total_derivative(D(a)));
        }
    }
}

TEST_CASE("apply is a graded derivation") {
    const EvolutionaryOp D = make_Dlambda();
    std::mt19937_64 rng(9);
    for (int i = 0; i < 60; ++i) {
        std::uniform_int_distribution<int> deg(0, 3);
        const ThetaPoly a = ThetaPoly::term(testing::random_monomial(rng, deg(rng), 3), testing::random_coeff(rng, false));
        const ThetaPoly b = testing::random_poly(rng, deg(rng), 3, 2);
        const int pa = a.terms().begin()->first.super_degree();
        const ThetaPoly rhs = D(a) * b + CoeffExpr(pa % 2 ? -1 : 1) * (a * D(b));
        CHECK(D(a * b) == rhs);
    }
}

TEST_CASE("variational derivatives") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 30; ++i) {
        const ThetaPoly a = testing::random_poly(rng, 3, 3);
        CHECK(variational_derivative_u(total_derivative(a)).is_zero());
        CHECK(variational_derivative_theta(total_derivative(a)).is_zero());
    }
    // delta/dtheta (theta theta1) = theta1 - d(-theta) = 2 theta1
    CHECK(variational_derivative_theta(th(0) * th(1)) == CoeffExpr(2) * th(1));
    CHECK(variational_derivative_u(Rational(1, 2) * (uj(1) * uj(1))) == -uj(2));
}

TEST_CASE("is_total_derivative") {
    const ThetaPoly a = uj(1) * th(0) * th(2);
    ExactnessResult r = is_total_derivative(total_derivative(a));
    CHECK(r.exact);
    REQUIRE(r.witness);
    CHECK(total_derivative(*r.witness) == total_derivative(a));

    r = is_total_derivative(th(0) * th(1));
    CHECK_FALSE(r.exact);
    CHECK_FALSE(r.witness);

    r = is_total_derivative(th(1) * th(2) + th(0) * th(3));
    CHECK(r.exact);
    REQUIRE(r.witness);
    CHECK(*r.witness == th(0) * th(2));

    r = is_total_derivative(ThetaPoly(CoeffExpr(3)));
    CHECK_FALSE(r.exact);
    CHECK(r.obstruction == "constant obstruction");

    // pure coefficient terms: g' c u1 + g c' u1 = d(g c)
    r = is_total_derivative(ddu(g * CoeffExpr::function("c")) * uj(1));
    CHECK(r.exact);
    REQUIRE(r.witness);
    CHECK(*r.witness == ThetaPoly(g * CoeffExpr::function("c")));
}

TEST_CASE("Euler completeness on random exact densities") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 60; ++i) {
        std::uniform_int_distribution<int> deg(0, 4);
        const ThetaPoly a = testing::random_poly(rng, deg(rng), 4, 3);
        const ThetaPoly da = total_derivative(a);
        const ExactnessResult r = is_total_derivative(da);
        CHECK(r.exact);
        REQUIRE(r.witness);
        CHECK(total_derivative(*r.witness) == da);
    }
}
