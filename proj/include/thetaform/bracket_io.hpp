#pragma once

// JSON files for delta-form and lattice brackets.
//
//   {"coordinate": "w", "order": 2,
//    "terms": [{"eps": 0, "der": 1, "coeff": "1"}, ...]}
//   {"source": "w", "target": "u", "F": "u + eps*u1"}
//   {"coordinate": "u",
//    "shift_terms": [{"shift": 1, "eps_power": -1, "coeff": "u(x)*u(y)"}, ...]}
//
// "order" is optional and records the eps truncation of the data.

#include <filesystem>
#include <set>
#include <string>
#include <string_view>

#include "json.hpp"
#include "thetaform/pencil.hpp"

namespace thetaform {

DeltaBracket bracket_from_json(const nlohmann::json& doc, const std::set<std::string>& functions = {"g", "c"});
nlohmann::json bracket_to_json(const DeltaBracket& b);
DeltaBracket load_bracket(const std::filesystem::path& path, const std::set<std::string>& functions = {"g", "c"});

/// Polynomial in point values such as u(x), u(y), u(x+eps), u(y-2*eps).
LatticePoly parse_lattice_coeff(std::string_view text, const std::string& variable = "u");
std::string render_lattice_coeff(const LatticePoly& p, const std::string& variable = "u");

/// {"source": "w", "target": "u", "F": "u + eps*sqrt(2)/4*u1"}, F written in the target coordinate.
MiuraTransform miura_from_json(const nlohmann::json& doc, const std::set<std::string>& functions = {"g", "c"});
MiuraTransform load_miura(const std::filesystem::path& path, const std::set<std::string>& functions = {"g", "c"});

LatticeBracket lattice_from_json(const nlohmann::json& doc);
nlohmann::json lattice_to_json(const LatticeBracket& b);
LatticeBracket load_lattice(const std::filesystem::path& path);

} // namespace thetaform
