#pragma once

// Built-in brackets for KdV, Camassa-Holm and Volterra. The same data ships as
// JSON under fixtures/.

#include <map>
#include <string>

#include "thetaform/pencil.hpp"

namespace thetaform::examples {

/// Fixture documents keyed by file name (e.g. "kdv_2.json").
const std::map<std::string, std::string>& fixture_documents();

DeltaBracket kdv(int which);
/// Camassa-Holm in the coordinate w.
DeltaBracket camassa_holm(int which);
/// w = u + eps/(2 sqrt 2) u1.
MiuraTransform camassa_holm_miura();
/// Volterra lattice brackets in the canonical coordinate u = 4 e^v.
LatticeBracket volterra(int which);
/// First Volterra bracket in the flat coordinate v.
LatticeBracket volterra_v();
/// u = 4 e^v, so du/dv = u.
PointSubstitution volterra_substitution();

} // namespace thetaform::examples
