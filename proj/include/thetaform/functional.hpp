#pragma once

// Local functionals: densities modulo total derivatives, the differentials they
// inherit from evolutionary operators, and bi-Hamiltonian cocycle checks.

#include <optional>
#include <string>

#include "thetaform/algebra.hpp"
#include "thetaform/operators.hpp"

namespace thetaform {

/// Class of a density in A/dA with its bidegree (standard degree d, super degree p).
class FunctionalClass {
public:
    FunctionalClass() = default;
    /// Bidegree read off the representative; a mixed representative has no bidegree.
    explicit FunctionalClass(ThetaPoly representative);
    FunctionalClass(ThetaPoly representative, int d, int p);

    [[nodiscard]] const ThetaPoly& representative() const noexcept { return rep_; }
    [[nodiscard]] int degree() const noexcept { return d_; }
    [[nodiscard]] int super_degree() const noexcept { return p_; }
    [[nodiscard]] bool homogeneous() const noexcept { return homogeneous_; }
    [[nodiscard]] bool is_zero() const;

private:
    ThetaPoly rep_;
    int d_ = 0;
    int p_ = 0;
    bool homogeneous_ = true;
};

/// Equality in A/dA. The witness w satisfies d(w) = a - b when reconstructible.
ExactnessResult class_difference(const FunctionalClass& a, const FunctionalClass& b);
bool class_equal(const FunctionalClass& a, const FunctionalClass& b);

/// Class of op(r); bidegree shifts by (1, 1).
FunctionalClass induced_d(const EvolutionaryOp& op, const FunctionalClass& a);

struct BHCheck {
    bool holds = false;
    /// Witnesses w with d(w) = D1(a) and d(w) = D2(a) for cocycles, or
    /// d(w) = a - D1 D2 y for coboundaries.
    std::optional<ThetaPoly> witness_1;
    std::optional<ThetaPoly> witness_2;
    std::string detail;
};

/// a is closed for both differentials of the pencil with metric g.
BHCheck verify_bh_cocycle(const FunctionalClass& a, const CoeffExpr& g = CoeffExpr::function("g"));
/// a = d1 d2 y in A/dA.
BHCheck verify_bh_coboundary(const FunctionalClass& a, const FunctionalClass& y,
                             const CoeffExpr& g = CoeffExpr::function("g"));
/// a is closed for the single operator op (used for d_lambda in A/dA[lambda]).
BHCheck verify_closed(const EvolutionaryOp& op, const FunctionalClass& a);

} // namespace thetaform
