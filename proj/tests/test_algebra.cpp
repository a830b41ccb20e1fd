#include "doctest.h"

#include "generators.hpp"
#include "thetaform/parse.hpp"

using namespace thetaform;

namespace {

ThetaPoly th(int s) { return ThetaPoly::theta(s); }
ThetaPoly uj(int s) { return ThetaPoly::u(s); }
const CoeffExpr g = CoeffExpr::function("g");

int parity(const ThetaPoly& a) {
    return a.is_zero() ? 0 : a.terms().begin()->first.super_degree() % 2;
}

} // namespace

TEST_CASE("super-commutative product") {
    CHECK(th(1) * th(0) == -(th(0) * th(1)));
    CHECK((th(2) * th(2)).is_zero());
    CHECK((uj(1) * th(0)) * (ThetaPoly(g) * th(1)) == ThetaPoly(g) * uj(1) * th(0) * th(1));
    // canonical storage: ascending theta order, sign folded into the coefficient
    const ThetaPoly p = th(3) * th(1) * th(0);
    REQUIRE(p.size() == 1);
    Monomial expected;
    expected.set_theta(0, true);
    expected.set_theta(1, true);
    expected.set_theta(3, true);
    CHECK(p.terms().begin()->first == expected);
    CHECK(p.terms().begin()->second == CoeffExpr(-1));
}

TEST_CASE("total derivative") {
    const CoeffExpr f = CoeffExpr::function("g");
    CHECK(total_derivative(ThetaPoly(f)) == ThetaPoly(CoeffExpr::function("g", 1)) * uj(1));
    CHECK(total_derivative(th(0) * th(1)) == th(0) * th(2));
    // extended mode: d(u1 log u1) = u2 log u1 + u2
    const ThetaPoly x = uj(1) * ThetaPoly::log_u1();
    CHECK(x.extended());
    CHECK(total_derivative(x) == uj(2) * ThetaPoly::log_u1() + uj(2));
    // d (u1)^-2 = -2 u2 (u1)^-3
    CHECK(total_derivative(ThetaPoly::u1_power(-2)) == ThetaPoly(CoeffExpr(-2)) * uj(2) * ThetaPoly::u1_power(-3));
}

TEST_CASE("weight and lexicographic order") {
    Monomial a;
    a.set_theta(1, true);
    a.set_theta(0, true);
    a.set_theta(2, true);
    CHECK(weight(a) == 0);
    CHECK(weight(Monomial::u(1)) == Rational(3, 2));
    Monomial b = Monomial::u(1);
    b.set_theta(0, true);
    b.set_theta(2, true);
    CHECK(weight(b) == Rational(3, 2));

    CHECK(lex_compare(Monomial::u(2), Monomial::u(1, 2)) == std::strong_ordering::greater);
    Monomial u2t0 = Monomial::u(2);
    u2t0.set_theta(0, true);
    CHECK(lex_compare(Monomial::theta(2), u2t0) == std::strong_ordering::greater);
    CHECK(lex_compare(b, b) == std::strong_ordering::equal);
    CHECK(lex_compare(Monomial::theta(0), Monomial{}) == std::strong_ordering::greater);
}

TEST_CASE("density parsing with jets") {
    ParseOptions o;
    o.allow_jets = true;
    o.allow_eps = true;
    const EpsPoly p = parse_density("(u - lambda)*g(u)*theta*theta1 + eps^2*ux*uxx", o);
    CHECK(p.at(0) == ThetaPoly((CoeffExpr::u() - CoeffExpr::lambda()) * g) * th(0) * th(1));
    CHECK(p.at(2) == uj(1) * uj(2));
    CHECK(parse_density("theta1*theta", o).at(0) == -(th(0) * th(1)));
    ParseOptions w = o;
    w.variable = "w";
    CHECK(parse_density("w*w1 + wxx", w).at(0) == ThetaPoly(CoeffExpr::u()) * uj(1) + uj(2));
    ParseOptions ext = o;
    ext.allow_extended = true;
    const ThetaPoly e = parse_density("c(u)*u1*log(u1) + 1/u1", ext).at(0);
    CHECK(e.extended());
    CHECK(e == ThetaPoly(CoeffExpr::function("c")) * uj(1) * ThetaPoly::log_u1() + ThetaPoly::u1_power(-1));
}

TEST_CASE("properties of the product and the total derivative") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 150; ++i) {
        std::uniform_int_distribution<int> deg(0, 3);
        const ThetaPoly a = testing::random_poly(rng, deg(rng), 3, 2, true);
        const ThetaPoly b = testing::random_poly(rng, deg(rng), 3, 2, true);
        const ThetaPoly c = testing::random_poly(rng, deg(rng), 3, 1, true);
        // a single monomial keeps the parity well defined
        const ThetaPoly ma = ThetaPoly::term(testing::random_monomial(rng, deg(rng), 3), testing::random_coeff(rng));
        const ThetaPoly mb = ThetaPoly::term(testing::random_monomial(rng, deg(rng), 3), testing::random_coeff(rng));
        CHECK((a * b) * c == a * (b * c));
        const int sign = (parity(ma) * parity(mb)) ? -1 : 1;
        CHECK(ma * mb == ThetaPoly(CoeffExpr(sign)) * (mb * ma));
        CHECK(total_derivative(a * b) == total_derivative(a) * b + a * total_derivative(b));
        for (const auto& [d, p] : a.bidegrees()) {
            const ThetaPoly da = total_derivative(a.component(d, p));
            for (const auto& [dd, pp] : da.bidegrees()) {
                CHECK(dd == d + 1);
                CHECK(pp == p);
            }
            CHECK(da.lambda_degree() <= a.lambda_degree());
        }
        if (!(ma * mb).is_zero()) {
            const Monomial& x = ma.terms().begin()->first;
            const Monomial& y = mb.terms().begin()->first;
            CHECK(weight((ma * mb).terms().begin()->first) == weight(x) + weight(y));
        }
    }
}
