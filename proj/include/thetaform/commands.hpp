#pragma once

// The verification and computation commands behind the command-line tool.
// Each returns a Report whose checks are sorted by name, so output does not
// depend on the execution mode.

#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "thetaform/coeff.hpp"
#include "thetaform/pencil.hpp"
#include "thetaform/report.hpp"
#include "thetaform/sweep.hpp"

namespace thetaform {

struct OperatorSweep {
    int max_degree = 5;
    int max_jet = 6;
    CoeffExpr g = CoeffExpr::function("g");
    /// Flips the sign of the theta characteristic (negative control).
    bool inject_sign_bug = false;
};

/// D1^2, D2^2, D1 D2 + D2 D1, D_lambda^2 and [D_lambda, d] on f(u) m for every
/// basis monomial m within the bounds.
Report cmd_verify_operators(const OperatorSweep& sweep, Execution exec = Execution::parallel);

/// d0 d0 = 0, kernel and image membership, d1 d1 = 0 modulo lower jets, the
/// U/V/W split and lexicographic descent of V.
Report cmd_verify_spectral(std::uint64_t seed = 1, Execution exec = Execution::parallel);

/// h d1 + d1 h = id on seeded samples; at (1,2) the kernel check d1(f theta1) = 0.
Report cmd_verify_homotopy(int p, int q, int samples, std::uint64_t seed, Execution exec = Execution::parallel);

/// Cocycle condition, negative control, logarithmic generator and delta form
/// of the order eps^2 deformation.
Report cmd_verify_deformation(const CoeffExpr& g = CoeffExpr::function("g"),
                              const CoeffExpr& c = CoeffExpr::function("c"));

/// The recurrence classifier on its three reference inputs.
Report cmd_verify_lambda();

/// d(a) is recognised as exact with a valid witness for random a, and theta theta1 is not.
Report cmd_verify_exactness(int samples, std::uint64_t seed, Execution exec = Execution::parallel);

/// Central invariant of a pair of delta-form or lattice bracket files.
Report cmd_central_invariant(const std::filesystem::path& file1, const std::filesystem::path& file2);
Report cmd_central_invariant(const DeltaBracket& b1, const DeltaBracket& b2);

/// name in {kdv, camassa-holm, volterra}.
Report cmd_example(const std::string& name);

enum class DeformFormat { theta, delta };
enum class DeformConstruct { formula, dlz };

struct DeformOutput {
    Report report;
    nlohmann::json document;
};

DeformOutput cmd_deform(const CoeffExpr& g, const CoeffExpr& c, DeformFormat format, DeformConstruct construct);

struct MiuraOutput {
    Report report;
    nlohmann::json document;
};

MiuraOutput cmd_miura(const DeltaBracket& b, const MiuraTransform& f, int order);

} // namespace thetaform
