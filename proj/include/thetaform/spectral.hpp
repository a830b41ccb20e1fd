#pragma once

// Filtration by jet order, the page-zero and page-one differentials of the
// associated spectral sequence, the split d1 = theta1 U + theta1 V + W, and the
// homotopy obtained from the perturbation series.

#include <optional>
#include <vector>

#include "thetaform/algebra.hpp"
#include "thetaform/operators.hpp"

namespace thetaform {

/// Representative f * theta theta^q of a class on the first page.
/// The body f has standard degree p, jets at most q - 1, no theta^0 and no theta^q,
/// and lambda already set to u.
struct E1Element {
    int p = 1;
    int q = 2;
    ThetaPoly body;

    /// Representative modulo jets of order <= q - 2.
    [[nodiscard]] ThetaPoly reduce() const;
    /// body * theta * theta^q as a density.
    [[nodiscard]] ThetaPoly density() const;
};

/// Largest i with a in F^i A_d = A_d^{(d-i)}.
int filtration_level(const ThetaPoly& a, int d);

class SpectralSequence {
public:
    explicit SpectralSequence(CoeffExpr g = CoeffExpr::function("g"));

    [[nodiscard]] const CoeffExpr& metric() const noexcept { return g_; }
    [[nodiscard]] const EvolutionaryOp& d_lambda() const noexcept { return d_lambda_; }

    // ---- page zero -------------------------------------------------------

    /// The page-zero differential E0^{p,q} -> E0^{p,q+1}.
    [[nodiscard]] ThetaPoly d0(const ThetaPoly& a, int p, int q) const;
    /// (G theta^q + 1/2 G' u^q theta) h + theta theta^q h2 with G = (u - lambda) g.
    [[nodiscard]] ThetaPoly kernel_element(const ThetaPoly& h, const ThetaPoly& h2, int q) const;
    /// The displayed image of d0 : E0^{p,q-1} -> E0^{p,q} for theta-free h0, h1.
    [[nodiscard]] ThetaPoly image_element(const ThetaPoly& h0, const ThetaPoly& h1, int q) const;
    /// A preimage of image_element under d0 at level q - 1.
    [[nodiscard]] static ThetaPoly image_preimage(const ThetaPoly& h0, const ThetaPoly& h1);

    // ---- page one --------------------------------------------------------

    /// d1(f theta theta^q) = (D_lambda(f)|_{lambda=u} + (q-2)/2 g theta1 f) theta theta^q.
    [[nodiscard]] E1Element d1(const E1Element& x) const;
    /// d1 read off from D_lambda(f theta theta^q): the theta theta^q cofactor at lambda = u.
    [[nodiscard]] E1Element d1_direct(const E1Element& x) const;

    /// Eigenvalue g * (weight(m) + (q - 2)/2) of U on the body monomial m.
    [[nodiscard]] CoeffExpr u_eigenvalue(const Monomial& m, int q) const;
    [[nodiscard]] ThetaPoly apply_U(const ThetaPoly& body, int q) const;
    /// U^{-1}; throws on a zero-weight monomial.
    [[nodiscard]] ThetaPoly apply_U_inverse(const ThetaPoly& body, int q) const;
    /// V by its closed form.
    [[nodiscard]] ThetaPoly apply_V(const ThetaPoly& body, int q) const;
    /// V as the theta1-cofactor of d1 minus U (defined on theta1-free bodies).
    [[nodiscard]] ThetaPoly apply_V_residual(const ThetaPoly& body, int q) const;
    /// W = d1 - theta1 U - theta1 V.
    [[nodiscard]] ThetaPoly apply_W(const ThetaPoly& body, int q) const;

    /// h = sum_n (-1)^n (U^{-1} V)^n U^{-1} d/dtheta1.
    [[nodiscard]] E1Element homotopy(const E1Element& x) const;

    /// Body basis of E1^{p,q}: monomials of degree p with jets <= q - 1 containing
    /// a jet-(q-1) variable, without theta^0 and theta^q.
    [[nodiscard]] static std::vector<Monomial> e1_basis(int p, int q, bool include_tail = false);

private:
    [[nodiscard]] ThetaPoly clean_body(const ThetaPoly& a, int q) const;

    CoeffExpr g_;
    CoeffExpr G_;
    CoeffExpr dG_;
    EvolutionaryOp d_lambda_;
};

struct LambdaIndependence {
    /// -(u - lambda) t' + t/2 after expansion.
    CoeffExpr expression;
    /// t0/2 when the expression is lambda-free.
    std::optional<CoeffExpr> value;
    /// t_i' = +(i + 1/2) t_{i+1} for all i.
    bool recurrence_plus = false;
    /// t_i' = -(i + 1/2) t_{i+1} for all i.
    bool recurrence_minus = false;
};

/// t = sum_i t[i] (u - lambda)^i with lambda-free t[i].
LambdaIndependence check_lambda_independence(const std::vector<CoeffExpr>& t);

} // namespace thetaform
