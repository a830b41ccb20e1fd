#include "doctest.h"

#include <algorithm>
#include <filesystem>

#include "thetaform/bracket_io.hpp"
#include "thetaform/commands.hpp"
#include "thetaform/error.hpp"
#include "thetaform/parse.hpp"

using namespace thetaform;

namespace {

const Check* find(const Report& r, const std::string& name) {
    for (const Check& c : r.checks()) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

bool sorted_by_name(const Report& r) {
    return std::is_sorted(r.checks().begin(), r.checks().end(),
                          [](const Check& a, const Check& b) { return a.name < b.name; });
}

} // namespace

TEST_CASE("report ordering and rendering") {
    Report r("demo");
    r.add(residual_check("b", "0"));
    r.add(residual_check("a", "u1"));
    Check w = residual_check("c", "0");
    w.witness = "theta";
    w.seconds = 1.5;
    r.add(w);
    CHECK(sorted_by_name(r));
    CHECK(r.passed() == 2);
    CHECK_FALSE(r.all_pass());
    CHECK(r.text() == "# demo\nFAIL  a\n      residual: u1\nPASS  b\n      residual: 0\nPASS  c\n"
                      "      residual: 0\n      witness: theta\n2 passed, 1 failed\n");
    CHECK(r.text(true).find("1.500 s") != std::string::npos);
    const nlohmann::json j = r.json();
    CHECK(j["failed"] == 1);
    CHECK(j["checks"][0]["status"] == "fail");
    CHECK(j["checks"][2]["witness"] == "theta");
    CHECK_FALSE(j["checks"][0].contains("wall_time"));
}

TEST_CASE("sweeps turn exceptions into failing checks") {
    const std::vector<Task> tasks{{"boom", []() -> Check { throw Error("bad input"); }},
                                  {"fine", [] { return residual_check({}, "0"); }}};
    for (Execution e : {Execution::serial, Execution::parallel}) {
        const Report r = run_tasks("t", tasks, e);
        REQUIRE(r.checks().size() == 2);
        CHECK_FALSE(r.checks()[0].pass);
        CHECK(r.checks()[0].detail == "error: bad input");
        CHECK(r.checks()[1].pass);
    }
}

TEST_CASE("verify operators") {
    const Report full = cmd_verify_operators(OperatorSweep{});
    CHECK(full.all_pass());
    CHECK(full.checks().size() > 400);
    CHECK(sorted_by_name(full));

    OperatorSweep tiny;
    tiny.max_degree = 0;
    const Report vacuous = cmd_verify_operators(tiny);
    CHECK(vacuous.all_pass());
    CHECK(vacuous.checks().size() == 10);
    CHECK(find(vacuous, "D1^2 | f(u)") != nullptr);
    CHECK(find(vacuous, "D1^2 | f(u)*theta") != nullptr);

    OperatorSweep bug;
    bug.max_degree = 2;
    bug.inject_sign_bug = true;
    const Report broken = cmd_verify_operators(bug);
    CHECK_FALSE(broken.all_pass());
    for (const Check& c : broken.checks()) {
        if (!c.pass) {
            CHECK(c.residual != "0");
        }
    }
}

TEST_CASE("serial and parallel sweeps give identical reports") {
    const auto same = [](const Report& a, const Report& b) {
        CHECK(a.text() == b.text());
        CHECK(a.json().dump() == b.json().dump());
    };
    OperatorSweep ops;
    ops.max_degree = 4;
    same(cmd_verify_operators(ops, Execution::serial), cmd_verify_operators(ops, Execution::parallel));
    same(cmd_verify_spectral(3, Execution::serial), cmd_verify_spectral(3, Execution::parallel));
    same(cmd_verify_homotopy(2, 3, 30, 9, Execution::serial), cmd_verify_homotopy(2, 3, 30, 9, Execution::parallel));
    same(cmd_verify_exactness(40, 9, Execution::serial), cmd_verify_exactness(40, 9, Execution::parallel));
}

TEST_CASE("runs are reproducible for a fixed seed") {
    CHECK(cmd_verify_homotopy(1, 3, 20, 4).text() == cmd_verify_homotopy(1, 3, 20, 4).text());
    CHECK(cmd_verify_homotopy(1, 3, 20, 4).text() != cmd_verify_homotopy(1, 3, 20, 5).text());
}

TEST_CASE("verify spectral") {
    const Report r = cmd_verify_spectral();
    CHECK(r.all_pass());
    const auto descent = std::count_if(r.checks().begin(), r.checks().end(),
                                       [](const Check& c) { return c.name.starts_with("V descent"); });
    CHECK(descent == 500);
}

TEST_CASE("verify homotopy") {
    for (const auto& [p, q] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}, {3, 2}, {2, 3}}) {
        const Report r = cmd_verify_homotopy(p, q, 25, 11);
        CHECK(r.all_pass());
        CHECK(r.checks().size() == 25);
    }
    const Report kernel = cmd_verify_homotopy(1, 2, 5, 11);
    CHECK(kernel.all_pass());
    CHECK(kernel.title().find("kernel mode") != std::string::npos);
    CHECK(find(kernel, "kernel (1,2) generic") != nullptr);
}

TEST_CASE("verify deformation") {
    const Report r = cmd_verify_deformation();
    CHECK(r.all_pass());
    const Check* control = find(r, "negative control: theta theta3 weight 7 is not a cocycle");
    REQUIRE(control);
    CHECK(control->residual != "0 ; 0");
    const Check* dlz = find(r, "dlz: class equal to the eps^2 density");
    REQUIRE(dlz);
    CHECK(dlz->detail == "normalization 1/2");
    const Check* d2 = find(r, "delta: d'' coefficient (derived)");
    REQUIRE(d2);
    CHECK(d2->detail.find("wrong degree") != std::string::npos);

    CHECK(cmd_verify_deformation(parse("u^2"), parse("1/24")).all_pass());
}

TEST_CASE("verify lambda and exactness") {
    const Report lam = cmd_verify_lambda();
    CHECK(lam.all_pass());
    CHECK(find(lam, "recurrence sign")->detail.find("-(i+1/2)") != std::string::npos);

    const Report ex = cmd_verify_exactness(60, 2);
    CHECK(ex.all_pass());
    const Check* neg = find(ex, "not exact: theta*theta1");
    REQUIRE(neg);
    CHECK(neg->residual != "0");
}

TEST_CASE("examples") {
    for (const char* name : {"kdv", "camassa-holm", "volterra"}) {
        const Report r = cmd_example(name);
        CHECK_MESSAGE(r.all_pass(), r.text());
    }
    CHECK(find(cmd_example("kdv"), "kdv: c = 1/24")->detail == "c = 1/24");
    CHECK_THROWS_AS(cmd_example("burgers"), Error);
}

TEST_CASE("central invariant from files") {
    const std::filesystem::path dir(THETAFORM_FIXTURE_DIR);
    const Report kdv = cmd_central_invariant(dir / "kdv_1.json", dir / "kdv_2.json");
    CHECK(kdv.all_pass());
    CHECK(*find(kdv, "central invariant")->witness == "1/24");
    const Report volterra = cmd_central_invariant(dir / "volterra_1.json", dir / "volterra_2.json");
    CHECK(*find(volterra, "central invariant")->witness == "1/24*u^(-1)");
    CHECK_THROWS_AS(cmd_central_invariant(dir / "missing.json", dir / "kdv_2.json"), Error);
}

TEST_CASE("deform") {
    const DeformOutput kdv = cmd_deform(CoeffExpr(1), CoeffExpr(Rational(1, 24)), DeformFormat::delta,
                                        DeformConstruct::formula);
    CHECK(kdv.report.all_pass());
    const DeltaBracket second = bracket_from_json(kdv.document["second"]);
    CHECK(second.coefficient(2, 3) == ThetaPoly(CoeffExpr(Rational(1, 8))));
    CHECK(bracket_from_json(kdv.document["first"]).coefficient(0, 1) == ThetaPoly(1));

    const DeformOutput theta = cmd_deform(CoeffExpr::function("g"), CoeffExpr::function("c"), DeformFormat::theta,
                                          DeformConstruct::formula);
    CHECK(theta.report.all_pass());
    CHECK(theta.document["terms"].size() == 2);

    const DeformOutput dlz = cmd_deform(CoeffExpr::function("g"), CoeffExpr::function("c"), DeformFormat::theta,
                                        DeformConstruct::dlz);
    CHECK(dlz.report.all_pass());
    CHECK(find(dlz.report, "dlz: class equal to the formula") != nullptr);

    const DeformOutput generic = cmd_deform(CoeffExpr::function("g"), CoeffExpr::function("c"), DeformFormat::delta,
                                            DeformConstruct::formula);
    CHECK(generic.report.all_pass());
}

TEST_CASE("miura command") {
    const std::filesystem::path dir(THETAFORM_FIXTURE_DIR);
    const MiuraOutput r = cmd_miura(load_bracket(dir / "camassa_holm_1.json"), load_miura(dir / "camassa_holm_miura.json"), 2);
    CHECK(r.report.all_pass());
    const DeltaBracket b = bracket_from_json(r.document);
    CHECK(b.coordinate == "u");
    CHECK(b.op == DiffOp::term(0, 1, ThetaPoly(1)));
}
