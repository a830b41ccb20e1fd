#include "doctest.h"

#include "generators.hpp"
#include "thetaform/error.hpp"
#include "thetaform/functional.hpp"

using namespace thetaform;

namespace {

const CoeffExpr u = CoeffExpr::u();
const CoeffExpr lam = CoeffExpr::lambda();
const CoeffExpr g = CoeffExpr::function("g");
ThetaPoly th(int s) { return ThetaPoly::theta(s); }
ThetaPoly uj(int s) { return ThetaPoly::u(s); }

} // namespace

TEST_CASE("class equality") {
    const FunctionalClass a(th(0) * th(1));
    CHECK(class_equal(FunctionalClass(th(0) * th(1) + total_derivative(uj(1) * th(0) * th(2))), a));
    CHECK_FALSE(class_equal(a, FunctionalClass(ThetaPoly(), 2, 2)));
    CHECK_FALSE(a.is_zero());

    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const ThetaPoly w = testing::random_poly(rng, 3, 3, 2);
        const ExactnessResult r = class_difference(FunctionalClass(total_derivative(w)), FunctionalClass());
        CHECK(r.exact);
        REQUIRE(r.witness);
        CHECK(total_derivative(*r.witness) == total_derivative(w));
    }
    CHECK_FALSE(FunctionalClass(th(0) + th(1)).homogeneous());
    CHECK_THROWS_AS(FunctionalClass(th(0) + th(1), 0, 1), Error);
}

TEST_CASE("induced differentials") {
    const CoeffExpr G = (u - lam) * g;
    CHECK(induced_d(make_Dlambda(), FunctionalClass(G * (th(0) * th(1)))).is_zero());

    const EvolutionaryOp D1 = make_D1();
    const EvolutionaryOp D2 = make_D2();
    const EvolutionaryOp Dl = make_Dlambda();
    std::mt19937_64 rng(8);
    for (int i = 0; i < 25; ++i) {
        std::uniform_int_distribution<int> deg(0, 3);
        const int d = deg(rng);
        const ThetaPoly r = ThetaPoly::term(testing::random_monomial(rng, d, 3), testing::random_coeff(rng, false));
        const ThetaPoly w = ThetaPoly::term(testing::random_monomial(rng, d - 1 < 0 ? 0 : d - 1, 3), testing::random_coeff(rng, false));
        if (d == 0 || w.bidegrees().front().second != r.bidegrees().front().second) {
            continue;
        }
        const FunctionalClass a(r);
        const FunctionalClass b(r + total_derivative(w));
        CHECK(class_equal(induced_d(D1, a), induced_d(D1, b)));
        CHECK(class_equal(induced_d(D2, a), induced_d(D2, b)));
        const FunctionalClass lin(D2(r) - lam * D1(r), a.degree() + 1, a.super_degree() + 1);
        CHECK(class_equal(lin, induced_d(Dl, a)));
    }
}

TEST_CASE("d1 and d2 anticommute on classes") {
    const EvolutionaryOp D1 = make_D1();
    const EvolutionaryOp D2 = make_D2();
    std::mt19937_64 rng(12);
    for (int i = 0; i < 30; ++i) {
        std::uniform_int_distribution<int> deg(0, 4);
        const FunctionalClass a(ThetaPoly::term(testing::random_monomial(rng, deg(rng), 4), testing::random_coeff(rng, false)));
        CHECK(induced_d(D1, induced_d(D1, a)).is_zero());
        CHECK(induced_d(D2, induced_d(D2, a)).is_zero());
        const FunctionalClass anti(D1(D2(a.representative())) + D2(D1(a.representative())), a.degree() + 2,
                                   a.super_degree() + 2);
        CHECK(anti.is_zero());
    }
}

TEST_CASE("bi-Hamiltonian cocycles and coboundaries") {
    // with g = u^2, f(u) theta is d1-closed iff f is proportional to u
    const CoeffExpr g2 = u * u;
    const BHCheck closed = verify_closed(make_D1(g2), FunctionalClass(ThetaPoly(u) * th(0)));
    CHECK(closed.holds);
    REQUIRE(closed.witness_1);
    CHECK(verify_closed(make_D1(g2), FunctionalClass(ThetaPoly(u * u) * th(0))).holds == false);

    const BHCheck zero = verify_bh_cocycle(FunctionalClass());
    CHECK(zero.holds);
    CHECK(verify_bh_coboundary(FunctionalClass(), FunctionalClass()).holds);

    // d1 d2 y is always a cocycle and a coboundary with witness y
    const FunctionalClass y(CoeffExpr::function("c") * uj(1));
    const FunctionalClass a(make_D1()(make_D2()(y.representative())));
    CHECK(verify_bh_cocycle(a).holds);
    const BHCheck cob = verify_bh_coboundary(a, y);
    CHECK(cob.holds);
    REQUIRE(cob.witness_1);
    CHECK(cob.witness_1->is_zero());
    CHECK_FALSE(verify_bh_coboundary(FunctionalClass(th(0) * th(1) * th(2)), FunctionalClass(CoeffExpr::function("c") * th(1))).holds);
    CHECK_THROWS_AS(verify_bh_coboundary(FunctionalClass(th(0) * th(1) * th(2)), FunctionalClass(uj(1))), Error);
}
