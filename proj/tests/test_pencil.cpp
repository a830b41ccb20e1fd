#include "doctest.h"

#include <fstream>

#include "generators.hpp"
#include "thetaform/basis.hpp"
#include "thetaform/bracket_io.hpp"
#include "thetaform/error.hpp"
#include "thetaform/examples.hpp"
#include "thetaform/functional.hpp"
#include "thetaform/operators.hpp"
#include "thetaform/parse.hpp"
#include "thetaform/pencil.hpp"

using namespace thetaform;

namespace {

const CoeffExpr u = CoeffExpr::u();
const CoeffExpr lam = CoeffExpr::lambda();
const CoeffExpr g = CoeffExpr::function("g");
const CoeffExpr c = CoeffExpr::function("c");
ThetaPoly th(int s) { return ThetaPoly::theta(s); }
ThetaPoly uj(int s) { return ThetaPoly::u(s); }

ThetaPoly random_bivector(std::mt19937_64& rng, int d, int terms = 3) {
    BasisSpec spec;
    spec.degree = d;
    spec.max_jet = 4;
    spec.super_degree = 2;
    ThetaPoly p;
    for (int i = 0; i < terms; ++i) {
        if (auto m = sample_monomial(spec, rng)) {
            p += ThetaPoly::term(*m, testing::random_coeff(rng, false, 2));
        }
    }
    return p;
}

ThetaPoly poly(const CoeffExpr& e) { return ThetaPoly(e); }

} // namespace

TEST_CASE("bivector normal form") {
    const auto nf = bivector_normal_form(th(1) * th(2));
    // theta1 theta2 = -theta theta3 mod d
    REQUIRE(nf.size() == 1);
    CHECK(nf.at(3) == ThetaPoly(-1));
    CHECK_THROWS_WITH_AS(bivector_normal_form(th(1)), doctest::Contains("not a bivector"), Error);

    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        std::uniform_int_distribution<int> deg(1, 4);
        const ThetaPoly p = random_bivector(rng, deg(rng));
        ThetaPoly back;
        for (const auto& [k, b] : bivector_normal_form(p)) {
            back += b * (th(0) * th(k));
        }
        CHECK(class_equal(FunctionalClass(back), FunctionalClass(p)));
    }
}

TEST_CASE("theta to delta on the hydrodynamic pencil") {
    const CoeffExpr G = (u - lam) * g;
    const DeltaBracket b = theta_to_delta(EpsPoly(G * (th(0) * th(1))));
    CHECK(b.is_skew());
    CHECK(b.coefficient(0, 1) == poly(G));
    CHECK(b.coefficient(0, 0) == (Rational(1, 2) * ddu(G)) * uj(1));
    CHECK(b.op.terms().size() == 2);

    const DeltaBracket half = theta_to_delta(EpsPoly(Rational(1, 2) * (th(0) * th(1))));
    CHECK(half.coefficient(0, 1) == ThetaPoly(CoeffExpr(Rational(1, 2))));
    CHECK(half.op.terms().size() == 1);

    CHECK(delta_to_theta(b) == EpsPoly(G * (th(0) * th(1))));
}

TEST_CASE("theta delta round trip") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 30; ++i) {
        EpsPoly p;
        for (int e = 0; e <= 2; e += 2) {
            std::uniform_int_distribution<int> deg(1, 4);
            p.add(e, random_bivector(rng, deg(rng)));
        }
        const DeltaBracket b = theta_to_delta(p);
        CHECK(b.is_skew());
        const EpsPoly back = delta_to_theta(b);
        for (int e = 0; e <= 2; e += 2) {
            CHECK(class_equal(FunctionalClass(back.at(e)), FunctionalClass(p.at(e))));
        }
        CHECK(theta_to_delta(back).op == b.op);
    }
}

TEST_CASE("deformation in delta form") {
    const EpsPoly p = deformation_order2();
    const DeltaBracket b = theta_to_delta(p);
    const CoeffExpr g1 = ddu(g);
    const CoeffExpr g2 = ddu(g1);
    const CoeffExpr g3 = ddu(g2);
    const CoeffExpr c1 = ddu(c);
    const CoeffExpr c2 = ddu(c1);

    CHECK(b.coefficient(2, 3) == poly(CoeffExpr(3) * c * g * g));
    const ThetaPoly derived_d2 = (Rational(9, 2) * g * g * c1 + CoeffExpr(9) * g * g1 * c) * uj(1);
    CHECK(b.coefficient(2, 2) == derived_d2);
    // the reading with u2 in the second summand is not of the right degree
    const ThetaPoly alternative_d2 = (Rational(9, 2) * g * g * c1) * uj(1) + (CoeffExpr(9) * g * g1 * c) * uj(2);
    CHECK(b.coefficient(2, 2) != alternative_d2);

    const ThetaPoly p21 = (CoeffExpr(8) * g * g1 * c1 + CoeffExpr(2) * g1 * g1 * c + Rational(13, 2) * g * g2 * c +
                           Rational(3, 2) * g * g * c2) *
                              (uj(1) * uj(1)) +
                          (Rational(3, 2) * g * g * c1 + CoeffExpr(7) * g * g1 * c) * uj(2);
    CHECK(b.coefficient(2, 1) == p21);
    const ThetaPoly p20 = (Rational(1, 2) * g1 * g1 * c1 + g * g1 * c2 + Rational(11, 4) * g * g2 * c1 +
                           Rational(3, 4) * g1 * g2 * c + Rational(7, 4) * g * g3 * c) *
                              (uj(1) * uj(1) * uj(1)) +
                          (CoeffExpr(4) * g * g1 * c1 + g1 * g1 * c + Rational(11, 2) * g * g2 * c) * (uj(1) * uj(2)) +
                          (CoeffExpr(2) * g * g1 * c) * uj(3);
    CHECK(b.coefficient(2, 0) == p20);
    CHECK(b.eps_graded());

    // g = 1, c = 1/24 gives the KdV block eps^2/8 delta'''
    const DeltaBracket kdv = theta_to_delta(deformation_order2(CoeffExpr(1), CoeffExpr(Rational(1, 24))));
    CHECK(kdv.coefficient(2, 3) == ThetaPoly(CoeffExpr(Rational(1, 8))));
    CHECK(kdv.op.eps_slice(2).terms().size() == 1);
}

TEST_CASE("deformation formula examples") {
    const EpsPoly p = deformation_order2();
    Monomial m;
    m.set_theta(0, true);
    m.set_theta(3, true);
    CHECK(p.at(2).coefficient(m) == CoeffExpr(3) * c * g * g);
    const EpsPoly flat = deformation_order2(CoeffExpr(1), c);
    CHECK(flat.at(2) == (CoeffExpr(3) * c) * (th(0) * th(3)) + (CoeffExpr(3) * ddu(c)) * (uj(1) * th(0) * th(2)));
    const EpsPoly none = deformation_order2(g, CoeffExpr(0));
    CHECK(none.at(2).is_zero());
    CHECK(none.at(0) == ((u - lam) * g) * (th(0) * th(1)));
}

TEST_CASE("deformation cocycle") {
    const DeformationCheck ok = verify_deformation();
    CHECK(ok.holds);
    CHECK(ok.euler_u.is_zero());
    CHECK(ok.euler_theta.is_zero());
    CHECK(ok.residual.lambda_degree() == 1);
    REQUIRE(ok.witness);
    CHECK(total_derivative(*ok.witness) == ok.residual);

    CHECK(verify_deformation(g, CoeffExpr(0)).residual.is_zero());

    const DeformationCheck bad = verify_deformation(g, c, 7);
    CHECK_FALSE(bad.holds);
    CHECK_FALSE((bad.euler_u.is_zero() && bad.euler_theta.is_zero()));
}

TEST_CASE("logarithmic generator") {
    const DlzResult r = dlz_generator();
    CHECK(r.raw.has_extension_atoms());
    CHECK_FALSE(r.reduced.has_extension_atoms());
    REQUIRE(r.normalization);
    MESSAGE("normalization ", to_string(*r.normalization));
    const ThetaPoly q = deformation_order2().at(2);
    CHECK(class_equal(FunctionalClass(r.normalized), FunctionalClass(q)));
    CHECK(class_equal(FunctionalClass(r.reduced), FunctionalClass(CoeffExpr(*r.normalization) * q)));

    const DlzResult zero = dlz_generator(g, CoeffExpr(0));
    CHECK(zero.reduced.is_zero());

    const CoeffExpr c2 = CoeffExpr::function("c", 1);
    const DlzResult a = dlz_generator(g, c);
    const DlzResult b = dlz_generator(g, c2);
    const DlzResult ab = dlz_generator(g, c + c2);
    CHECK(class_equal(FunctionalClass(ab.reduced), FunctionalClass(a.reduced + b.reduced)));
}

TEST_CASE("canonical coordinate") {
    CHECK(canonical_coordinate(g, u * g) == u);
    CHECK(canonical_coordinate(CoeffExpr(2) * u * u, CoeffExpr(2) * u.pow(3)) == u);
    CHECK(canonical_coordinate(CoeffExpr(1), u) == u);
    CHECK(canonical_coordinate(u + CoeffExpr(1), u * (u + CoeffExpr(1))) == u);
    CHECK_THROWS_AS(canonical_coordinate(CoeffExpr(0), u), Error);
}

TEST_CASE("central invariants") {
    const CentralInvariant kdv = central_invariant(examples::kdv(1), examples::kdv(2));
    CHECK(kdv.c == CoeffExpr(Rational(1, 24)));

    const CentralInvariant ch = central_invariant(examples::camassa_holm(1), examples::camassa_holm(2));
    CHECK(ch.c == Rational(1, 24) * u);
    CHECK(rename_coordinate(ch.c.render(), "w") == "1/24*w");

    DeltaBracket skewed = examples::kdv(2);
    skewed.op.add(0, 1, ThetaPoly(CoeffExpr(1)));
    CHECK_THROWS_WITH_AS(central_invariant(examples::kdv(1), skewed), doctest::Contains("not in canonical coordinate"),
                         Error);
}

TEST_CASE("Miura transformations") {
    MiuraTransform identity;
    identity.F = EpsPoly(ThetaPoly(u));
    const DeltaBracket kdv2 = examples::kdv(2);
    CHECK(miura_transform(kdv2, identity, 2).op == kdv2.op);

    const MiuraTransform f = examples::camassa_holm_miura();
    const DeltaBracket b1 = miura_transform(examples::camassa_holm(1), f, 2);
    CHECK(b1.op == DiffOp::term(0, 1, ThetaPoly(1)));
    CHECK(b1.coordinate == "u");

    const DeltaBracket b2 = miura_transform(examples::camassa_holm(2), f, 2);
    DiffOp expected = DiffOp::term(0, 1, poly(u)) + DiffOp::term(0, 0, Rational(1, 2) * uj(1));
    expected.add(2, 3, Rational(1, 8) * poly(u));
    expected.add(2, 2, Rational(3, 16) * uj(1));
    expected.add(2, 1, Rational(1, 16) * uj(2));
    CHECK(b2.op == expected);
    CHECK(b2.op.eps_slice(1).is_zero());

    const CentralInvariant ci = central_invariant(b1, b2);
    CHECK(ci.c == Rational(1, 24) * u);

    DeltaBracket truncated = examples::camassa_holm(1);
    truncated.order = 2;
    CHECK_THROWS_WITH_AS(miura_transform(truncated, f, 3), doctest::Contains("order overflow"), Error);
}

TEST_CASE("Volterra lattice") {
    const DeltaBracket b1 = expand_lattice_bracket(examples::volterra(1), std::nullopt, 2);
    const DeltaBracket b2 = expand_lattice_bracket(examples::volterra(2), std::nullopt, 2);
    CHECK(b1.is_skew());
    CHECK(b2.is_skew());
    CHECK(b1.coefficient(0, 1) == poly(CoeffExpr(2) * u * u));
    CHECK(b1.coefficient(0, 0) == (CoeffExpr(2) * u) * uj(1));
    CHECK(b1.coefficient(2, 3) == poly(Rational(1, 3) * u * u));
    CHECK(b2.coefficient(2, 3) == poly(Rational(5, 6) * u.pow(3)));
    CHECK(b1.op.eps_slice(1).is_zero());
    CHECK(b2.op.eps_slice(1).is_zero());

    // B2 - lambda B1 at eps^0 is the hydrodynamic bracket of 2u^3 - 2 lambda u^2
    const DiffOp pencil = (b2.op - lam * b1.op).eps_slice(0);
    const CoeffExpr metric = CoeffExpr(2) * u.pow(3) - CoeffExpr(2) * lam * u * u;
    CHECK(pencil == theta_to_delta(EpsPoly(metric * (th(0) * th(1)))).op);

    const CentralInvariant ci = central_invariant(b1, b2);
    CHECK(ci.g == CoeffExpr(2) * u * u);
    CHECK(ci.q1 == Rational(1, 3) * u * u);
    CHECK(ci.q2 == Rational(5, 6) * u.pow(3));
    CHECK(ci.c == Rational(1, 24) * u.pow(-1));

    // the flat-coordinate bracket maps onto the first canonical one
    const DeltaBracket from_v = expand_lattice_bracket(examples::volterra_v(), examples::volterra_substitution(), 4);
    CHECK(from_v.op == expand_lattice_bracket(examples::volterra(1), std::nullopt, 4).op);
    CHECK(from_v.coordinate == "u");
}

TEST_CASE("bracket files") {
    const DeltaBracket b = examples::camassa_holm(1);
    CHECK(b.coordinate == "w");
    const nlohmann::json doc = bracket_to_json(b);
    CHECK(bracket_from_json(doc).op == b.op);
    const DeltaBracket kdv2 = examples::kdv(2);
    CHECK(bracket_from_json(bracket_to_json(kdv2)).op == kdv2.op);

    const DeltaBracket rich = theta_to_delta(deformation_order2(), "u");
    DeltaBracket rich_plain;
    rich_plain.op = rich.op.map([](const ThetaPoly& a) { return subst_lambda(a, CoeffExpr(0)); });
    CHECK(bracket_from_json(bracket_to_json(rich_plain)).op == rich_plain.op);

    const nlohmann::json not_skew = nlohmann::json::parse(R"j({"terms": [{"eps": 0, "der": 0, "coeff": "u"}]})j");
    CHECK_THROWS_WITH_AS(bracket_from_json(not_skew), doctest::Contains("skewness"), Error);
    const nlohmann::json bad = nlohmann::json::parse(R"j({"terms": [{"eps": 0, "der": 1, "coeff": "h(u)"}]})j");
    CHECK_THROWS_AS(bracket_from_json(bad), UnknownSymbolError);

    const LatticePoly p = parse_lattice_coeff("u(x)*u(y)*(u(x) + u(y))/4 - 2*u(y+eps)^2");
    CHECK(parse_lattice_coeff(render_lattice_coeff(p)) == p);
    CHECK(lattice_from_json(lattice_to_json(examples::volterra(2))).terms.size() == 4);
    CHECK_THROWS_AS(parse_lattice_coeff("u(z)"), ParseError);
    CHECK_THROWS_AS(parse_lattice_coeff("v(x)"), ParseError);
}

TEST_CASE("fixture files match the built-in copies") {
    for (const auto& [name, text] : examples::fixture_documents()) {
        const std::filesystem::path path = std::filesystem::path(THETAFORM_FIXTURE_DIR) / name;
        REQUIRE_MESSAGE(std::filesystem::exists(path), path.string());
        std::ifstream in(path);
        CHECK(nlohmann::json::parse(in) == nlohmann::json::parse(text));
    }
}
