#pragma once

// Brackets in delta-function form, their correspondence with bivector
// densities, Miura transformations, lattice brackets, central invariants and
// the order eps^2 deformation of a hydrodynamic pencil.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thetaform/diffop.hpp"
#include "thetaform/series.hpp"

namespace thetaform {

/// {u(x),u(y)} = K delta(x-y) with K = sum eps^e A_{e,k} d^k.
struct DeltaBracket {
    std::string coordinate = "u";
    DiffOp op;
    /// Highest eps power the data is known to; nullopt means exact.
    std::optional<int> order;

    [[nodiscard]] ThetaPoly coefficient(int eps_power, int k) const { return op.coefficient(eps_power, k); }
    /// K^dagger = -K.
    [[nodiscard]] bool is_skew() const;
    /// deg A_{e,k} + k = 1 + e for every term.
    [[nodiscard]] bool eps_graded() const;
    [[nodiscard]] std::string render() const;
};

/// Point change w = F(u) with F = u + sum_{e>=1} eps^e F_e.
struct MiuraTransform {
    EpsPoly F;
    std::string source = "w";
    std::string target = "u";
};

/// u(x + offset eps) or u(y + offset eps).
struct LatticePoint {
    bool at_y = false;
    int offset = 0;
    auto operator<=>(const LatticePoint&) const = default;
};
using LatticeMonomial = std::map<LatticePoint, int>;
using LatticePoly = std::map<LatticeMonomial, Rational>;

/// eps^eps_power * coeff * delta(x - y + shift eps).
struct LatticeTerm {
    int shift = 0;
    int eps_power = 0;
    LatticePoly coeff;
};

struct LatticeBracket {
    std::string coordinate = "u";
    std::vector<LatticeTerm> terms;
};

/// New coordinate with d(new)/d(old) given as a polynomial in the new coordinate,
/// e.g. u = 4 e^v has jacobian u.
struct PointSubstitution {
    std::string coordinate;
    CoeffExpr jacobian;
};

/// Renames the dependent variable in rendered text (u, u1, g(u), ...).
std::string rename_coordinate(const std::string& text, const std::string& name);

/// Bivector reduced modulo total derivatives to sum_k B_k theta theta^k.
std::map<int, ThetaPoly> bivector_normal_form(const ThetaPoly& p);

DeltaBracket theta_to_delta(const EpsPoly& p, const std::string& coordinate = "u");
EpsPoly delta_to_theta(const DeltaBracket& b);

CoeffExpr canonical_coordinate(const CoeffExpr& g1, const CoeffExpr& g2);

struct CentralInvariant {
    CoeffExpr g;
    CoeffExpr q1;
    CoeffExpr q2;
    CoeffExpr c;
};
CentralInvariant central_invariant(const DeltaBracket& b1, const DeltaBracket& b2);

/// a(w, w1, ...) with w^s replaced by d^s F, as an eps-series up to `order`.
EpsPoly substitute_jets(const ThetaPoly& a, const EpsPoly& F, int order);

DeltaBracket miura_transform(const DeltaBracket& b, const MiuraTransform& f, int order);

DeltaBracket expand_lattice_bracket(const LatticeBracket& b, const std::optional<PointSubstitution>& subst,
                                    int order);

/// (u - lambda) g theta theta1 + eps^2 Q. The theta theta^3 weight is a parameter
/// only so tests can corrupt it.
EpsPoly deformation_order2(const CoeffExpr& g = CoeffExpr::function("g"),
                           const CoeffExpr& c = CoeffExpr::function("c"), const Rational& theta3_weight = 6);

struct DeformationCheck {
    ThetaPoly residual;
    ThetaPoly euler_u;
    ThetaPoly euler_theta;
    std::optional<ThetaPoly> witness;
    bool holds = false;
};
DeformationCheck verify_deformation(const CoeffExpr& g = CoeffExpr::function("g"),
                                    const CoeffExpr& c = CoeffExpr::function("c"),
                                    const Rational& theta3_weight = 6);

struct DlzResult {
    /// d1(d2[c u1 log u1] - d1[u c u1 log u1]) before reduction.
    ThetaPoly raw;
    /// Plain representative sum A_k theta theta^k of the same class.
    ThetaPoly reduced;
    /// r with [reduced] = r [Q]; nullopt when Q vanishes.
    std::optional<Rational> normalization;
    /// reduced / r.
    ThetaPoly normalized;
};
DlzResult dlz_generator(const CoeffExpr& g = CoeffExpr::function("g"), const CoeffExpr& c = CoeffExpr::function("c"));

} // namespace thetaform
