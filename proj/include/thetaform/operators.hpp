#pragma once

// Evolutionary derivations of the density algebra and the Euler operators that
// decide membership in the image of the total derivative.

#include <optional>
#include <string>
#include <vector>

#include "thetaform/algebra.hpp"

namespace thetaform {

/// A derivation given by its characteristics and prolonged so that it commutes
/// with the total derivative:
///   D = sum_s d^s(X_u) d/du^s + d^s(X_theta) d/dtheta^s,
/// with left theta-derivatives and characteristics multiplied from the left.
/// For odd D (odd X_u, even X_theta) this is a graded derivation:
///   D(ab) = D(a) b + (-1)^{p(a)} a D(b).
class EvolutionaryOp {
public:
    EvolutionaryOp(ThetaPoly x_u, ThetaPoly x_theta, bool odd = true);

    [[nodiscard]] const ThetaPoly& x_u() const noexcept { return prolonged_u_.front(); }
    [[nodiscard]] const ThetaPoly& x_theta() const noexcept { return prolonged_theta_.front(); }
    [[nodiscard]] bool odd() const noexcept { return odd_; }

    [[nodiscard]] ThetaPoly apply(const ThetaPoly& a) const;
    [[nodiscard]] ThetaPoly operator()(const ThetaPoly& a) const { return apply(a); }

    /// alpha * A + beta * B, acting through the characteristics.
    static EvolutionaryOp combine(const CoeffExpr& alpha, const EvolutionaryOp& a, const CoeffExpr& beta,
                                  const EvolutionaryOp& b);

private:
    [[nodiscard]] ThetaPoly prolonged_u(int s) const;
    [[nodiscard]] ThetaPoly prolonged_theta(int s) const;

    static constexpr int precomputed_jets = 8;

    std::vector<ThetaPoly> prolonged_u_;
    std::vector<ThetaPoly> prolonged_theta_;
    bool odd_;
};

/// Operator of the hydrodynamic bracket with metric `h`:
///   X_u = h theta1 + 1/2 h' u1 theta,  X_theta = 1/2 h' theta theta1.
EvolutionaryOp make_hydrodynamic_op(const CoeffExpr& h);

EvolutionaryOp make_D1(const CoeffExpr& g = CoeffExpr::function("g"));
EvolutionaryOp make_D2(const CoeffExpr& g = CoeffExpr::function("g"));
/// D_lambda = D2 - lambda D1, built from the metric (u - lambda) g.
EvolutionaryOp make_Dlambda(const CoeffExpr& g = CoeffExpr::function("g"));

/// Euler operator sum_s (-d)^s d/du^s.
ThetaPoly variational_derivative_u(const ThetaPoly& a);
/// Euler operator sum_s (-d)^s d/dtheta^s (left derivatives).
ThetaPoly variational_derivative_theta(const ThetaPoly& a);

struct ExactnessResult {
    bool exact = false;
    /// w with d(w) = a, when exact and reconstructible.
    std::optional<ThetaPoly> witness;
    /// Nonempty when exactness fails for a reason other than nonzero Euler derivatives.
    std::string obstruction;
};

/// Decides a in im(d) by the Euler criterion and reconstructs a witness by
/// integrating by parts on the top jet variable.
ExactnessResult is_total_derivative(const ThetaPoly& a);

/// Witness construction only; nullopt when the greedy integration fails.
std::optional<ThetaPoly> integrate_total_derivative(const ThetaPoly& a);

} // namespace thetaform
