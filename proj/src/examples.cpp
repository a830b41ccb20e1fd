#include "thetaform/examples.hpp"

#include "thetaform/bracket_io.hpp"
#include "thetaform/error.hpp"

namespace thetaform::examples {

const std::map<std::string, std::string>& fixture_documents() {
    static const std::map<std::string, std::string> docs = {
        {"camassa_holm_1.json", R"json({"coordinate": "w", "terms": [
  {"eps": 0, "der": 1, "coeff": "1"},
  {"eps": 2, "der": 3, "coeff": "-1/8"}]})json"},
        {"camassa_holm_2.json", R"json({"coordinate": "w", "terms": [
  {"eps": 0, "der": 1, "coeff": "w"},
  {"eps": 0, "der": 0, "coeff": "1/2*w1"}]})json"},
        {"camassa_holm_miura.json", R"json({"source": "w", "target": "u", "F": "u + eps*sqrt(2)/4*u1"})json"},
        {"kdv_1.json", R"json({"coordinate": "u", "terms": [{"eps": 0, "der": 1, "coeff": "1"}]})json"},
        {"kdv_2.json", R"json({"coordinate": "u", "terms": [
  {"eps": 0, "der": 1, "coeff": "u"},
  {"eps": 0, "der": 0, "coeff": "1/2*u1"},
  {"eps": 2, "der": 3, "coeff": "1/8"}]})json"},
        {"volterra_1.json", R"json({"coordinate": "u", "shift_terms": [
  {"shift": 1, "eps_power": -1, "coeff": "u(x)*u(y)"},
  {"shift": -1, "eps_power": -1, "coeff": "-u(x)*u(y)"}]})json"},
        {"volterra_2.json", R"json({"coordinate": "u", "shift_terms": [
  {"shift": 1, "eps_power": -1, "coeff": "u(x)*u(y)*(u(x) + u(y))/4"},
  {"shift": -1, "eps_power": -1, "coeff": "-u(x)*u(y)*(u(x) + u(y))/4"},
  {"shift": 2, "eps_power": -1, "coeff": "u(x)*u(y)*u(x+eps)/4"},
  {"shift": -2, "eps_power": -1, "coeff": "-u(x)*u(y)*u(y+eps)/4"}]})json"},
        {"volterra_v_1.json", R"json({"coordinate": "v", "shift_terms": [
  {"shift": 1, "eps_power": -1, "coeff": "1"},
  {"shift": -1, "eps_power": -1, "coeff": "-1"}]})json"},
    };
    return docs;
}

namespace {

nlohmann::json doc(const std::string& name) {
    const auto& docs = fixture_documents();
    auto it = docs.find(name);
    if (it == docs.end()) {
        throw Error("no built-in fixture " + name);
    }
    return nlohmann::json::parse(it->second);
}

std::string index(int which) {
    if (which != 1 && which != 2) {
        throw Error("bracket index must be 1 or 2");
    }
    return std::to_string(which);
}

} // namespace

DeltaBracket kdv(int which) {
    return bracket_from_json(doc("kdv_" + index(which) + ".json"));
}

DeltaBracket camassa_holm(int which) {
    return bracket_from_json(doc("camassa_holm_" + index(which) + ".json"));
}

MiuraTransform camassa_holm_miura() {
    return miura_from_json(doc("camassa_holm_miura.json"));
}

LatticeBracket volterra(int which) {
    return lattice_from_json(doc("volterra_" + index(which) + ".json"));
}

LatticeBracket volterra_v() {
    return lattice_from_json(doc("volterra_v_1.json"));
}

PointSubstitution volterra_substitution() {
    return PointSubstitution{"u", CoeffExpr::u()};
}

} // namespace thetaform::examples
