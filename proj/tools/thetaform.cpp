// Command-line front end: verification suites, central invariants, examples,
// deformations and Miura transformations. Exit status is 0 iff every check passes.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "thetaform/bracket_io.hpp"
#include "thetaform/commands.hpp"
#include "thetaform/error.hpp"
#include "thetaform/parse.hpp"

using namespace thetaform;

namespace {

struct Global {
    bool json = false;
    bool timings = false;
    bool serial = false;
    std::string out;
};

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw Error("cannot write " + path);
    }
    f << text;
}

std::string render_report(const Report& r, const Global& opt) {
    return opt.json ? r.json(opt.timings).dump(2) + "\n" : r.text(opt.timings);
}

int emit(const Report& r, const Global& opt) {
    write_text(render_report(r, opt), opt.out);
    return r.all_pass() ? 0 : 1;
}

CoeffExpr parse_function(const std::string& text) {
    return parse(text);
}

/// Report plus an emitted document: the document goes to --out when given,
/// otherwise it is printed along with the report.
int emit_with_document(const Report& r, const nlohmann::json& document, const Global& opt) {
    if (!opt.out.empty()) {
        write_text(document.dump(2) + "\n", opt.out);
        std::cout << render_report(r, opt);
    } else if (opt.json) {
        std::cout << nlohmann::json{{"document", document}, {"report", r.json(opt.timings)}}.dump(2) << "\n";
    } else {
        std::cout << document.dump(2) << "\n" << r.text(opt.timings);
    }
    return r.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic calculus for scalar Poisson pencils in the theta formalism"};
    app.require_subcommand(1);
    app.fallthrough();
    Global opt;
    app.add_flag("--json", opt.json, "Emit JSON instead of text");
    app.add_flag("--timings", opt.timings, "Include wall times (output is then not byte-stable)");
    app.add_flag("--serial", opt.serial, "Run sweeps with the serial reference loop");
    app.add_option("--out", opt.out, "Write the report (or, for deform/miura, the emitted document) to a file");

    int max_degree = 5;
    int max_jet = 6;
    int p = 1;
    int q = 3;
    int samples = 100;
    std::uint64_t seed = 1;
    std::string g_text = "g(u)";
    std::string c_text = "c(u)";
    std::string format = "theta";
    std::string construct = "formula";
    int order = 2;

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->require_subcommand(1);
    verify->fallthrough();
    auto* v_ops = verify->add_subcommand("operators", "D1^2 = D2^2 = {D1,D2} = [D_lambda, d] = 0 on a basis sweep");
    v_ops->add_option("--max-degree", max_degree)->capture_default_str();
    v_ops->add_option("--max-jet", max_jet)->capture_default_str();
    v_ops->add_option("--g", g_text, "Metric")->capture_default_str();
    auto* v_hom = verify->add_subcommand("homotopy", "Contraction h d1 + d1 h = id on seeded samples");
    v_hom->add_option("--p", p)->capture_default_str();
    v_hom->add_option("--q", q)->capture_default_str();
    v_hom->add_option("--samples", samples)->capture_default_str();
    v_hom->add_option("--seed", seed)->capture_default_str();
    auto* v_def = verify->add_subcommand("deformation", "Cocycle, negative control, generator and delta form");
    v_def->add_option("--g", g_text)->capture_default_str();
    v_def->add_option("--c", c_text)->capture_default_str();
    auto* v_spec = verify->add_subcommand("spectral", "Identities of the first two spectral pages");
    v_spec->add_option("--seed", seed)->capture_default_str();
    verify->add_subcommand("lambda", "Lambda-independence classifier on its reference inputs");
    auto* v_ex = verify->add_subcommand("exactness", "Exactness oracle on random total derivatives");
    v_ex->add_option("--samples", samples)->capture_default_str();
    v_ex->add_option("--seed", seed)->capture_default_str();

    std::string file1;
    std::string file2;
    auto* central = app.add_subcommand("central-invariant", "Central invariant of a pair of bracket files");
    central->add_option("file1", file1)->required()->check(CLI::ExistingFile);
    central->add_option("file2", file2)->required()->check(CLI::ExistingFile);

    std::string example_name;
    auto* example = app.add_subcommand("example", "Built-in examples");
    example->add_option("name", example_name)->required()->check(CLI::IsMember({"kdv", "camassa-holm", "volterra"}));

    auto* deform = app.add_subcommand("deform", "Order eps^2 deformation of the pencil with metric g");
    deform->add_option("--g", g_text)->capture_default_str();
    deform->add_option("--c", c_text)->capture_default_str();
    deform->add_option("--format", format)->check(CLI::IsMember({"theta", "delta"}))->capture_default_str();
    deform->add_option("--construct", construct)->check(CLI::IsMember({"formula", "dlz"}))->capture_default_str();

    std::string bracket_file;
    std::string miura_file;
    auto* miura = app.add_subcommand("miura", "Apply a Miura transformation to a bracket file");
    miura->add_option("bracket", bracket_file)->required()->check(CLI::ExistingFile);
    miura->add_option("transform", miura_file)->required()->check(CLI::ExistingFile);
    miura->add_option("--order", order, "Highest eps power kept")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    const Execution exec = opt.serial ? Execution::serial : Execution::parallel;

    try {
        if (v_ops->parsed()) {
            OperatorSweep sweep;
            sweep.max_degree = max_degree;
            sweep.max_jet = max_jet;
            sweep.g = parse_function(g_text);
            return emit(cmd_verify_operators(sweep, exec), opt);
        }
        if (v_hom->parsed()) {
            return emit(cmd_verify_homotopy(p, q, samples, seed, exec), opt);
        }
        if (v_def->parsed()) {
            return emit(cmd_verify_deformation(parse_function(g_text), parse_function(c_text)), opt);
        }
        if (v_spec->parsed()) {
            return emit(cmd_verify_spectral(seed, exec), opt);
        }
        if (v_ex->parsed()) {
            return emit(cmd_verify_exactness(samples, seed, exec), opt);
        }
        if (verify->parsed()) {
            return emit(cmd_verify_lambda(), opt);
        }
        if (central->parsed()) {
            return emit(cmd_central_invariant(file1, file2), opt);
        }
        if (example->parsed()) {
            return emit(cmd_example(example_name), opt);
        }
        if (deform->parsed()) {
            const DeformOutput r =
                cmd_deform(parse_function(g_text), parse_function(c_text),
                           format == "theta" ? DeformFormat::theta : DeformFormat::delta,
                           construct == "dlz" ? DeformConstruct::dlz : DeformConstruct::formula);
            return emit_with_document(r.report, r.document, opt);
        }
        if (miura->parsed()) {
            const MiuraOutput r = cmd_miura(load_bracket(bracket_file), load_miura(miura_file), order);
            return emit_with_document(r.report, r.document, opt);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
