#pragma once

// Expression grammar shared by the CLI and the bracket files:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' integer | '^(' signed integer ')')?
//   primary := integer | '(' expr ')' | 'u' | 'lambda' | 'eps'
//            | F'...'(u) | D[F,k](u) | sqrt(<positive rational>)
//            | u1, u2, ..., ux, uxx, theta, theta1, ...    (jet mode)
//            | log(u1)                                      (extended mode)
//
// Division is restricted to single-term divisors.

#include <set>
#include <string>
#include <string_view>

#include "thetaform/coeff.hpp"
#include "thetaform/series.hpp"

namespace thetaform {

struct ParseOptions {
    /// Name of the dependent variable ("u" by default, e.g. "w" for bracket files in w).
    std::string variable = "u";
    std::set<std::string> functions = {"g", "c"};
    bool allow_jets = false;
    bool allow_eps = false;
    bool allow_extended = false;
};

/// Parses a scalar coefficient (no jets, no eps).
CoeffExpr parse(std::string_view text, const ParseOptions& options = {});

/// Parses a density, allowing jet variables and eps.
EpsPoly parse_density(std::string_view text, ParseOptions options = {});

} // namespace thetaform
