#pragma once

// The super-commutative algebra of densities in the jet variables u^s (s >= 1,
// even) and theta^s (s >= 0, odd), with coefficients in CoeffExpr.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "thetaform/coeff.hpp"

namespace thetaform {

inline constexpr int max_theta_index = 63;

class Monomial {
public:
    Monomial() = default;

    static Monomial u(int s, int exponent = 1);
    static Monomial theta(int s);

    /// Exponent of u^s for s >= 1.
    [[nodiscard]] int u_exponent(int s) const noexcept {
        return s >= 1 && s <= static_cast<int>(u_.size()) ? u_[static_cast<std::size_t>(s - 1)] : 0;
    }
    [[nodiscard]] bool has_theta(int s) const noexcept { return (theta_ >> s) & 1U; }
    [[nodiscard]] std::uint64_t theta_mask() const noexcept { return theta_; }
    [[nodiscard]] int u_size() const noexcept { return static_cast<int>(u_.size()); }

    void set_u_exponent(int s, int exponent);
    void set_theta(int s, bool present);

    /// Largest s with u^s or theta^s present; 0 for jet-free monomials.
    [[nodiscard]] int max_jet() const noexcept;
    /// Standard degree: sum of s over all factors.
    [[nodiscard]] int degree() const noexcept;
    /// Number of theta factors.
    [[nodiscard]] int super_degree() const noexcept;
    [[nodiscard]] bool is_one() const noexcept { return u_.empty() && theta_ == 0; }
    /// Negative exponents only occur in extended mode (on u^1).
    [[nodiscard]] bool has_negative_exponent() const noexcept;

    /// Sign (+1, -1) of the product, or 0 if a theta repeats.
    friend int multiply(const Monomial& a, const Monomial& b, Monomial& out);

    auto operator<=>(const Monomial&) const = default;

    [[nodiscard]] std::string render() const;

private:
    void trim();

    std::vector<int> u_;
    std::uint64_t theta_ = 0;
};

/// Weight with u^s of weight (s+2)/2 and theta^s of weight (s-1)/2.
Rational weight(const Monomial& m);

/// Lexicographic comparison of the multi-indices (..., j_1, i_1, j_0); the
/// coefficient is ignored.
std::strong_ordering lex_compare(const Monomial& m, const Monomial& n);

class ThetaPoly {
public:
    using TermMap = std::map<Monomial, CoeffExpr>;

    ThetaPoly() = default;
    ThetaPoly(const CoeffExpr& c); // NOLINT(google-explicit-constructor)
    ThetaPoly(int c) : ThetaPoly(CoeffExpr(c)) {} // NOLINT(google-explicit-constructor)

    static ThetaPoly term(const Monomial& m, const CoeffExpr& c = CoeffExpr(1));
    static ThetaPoly u(int s);
    static ThetaPoly theta(int s);
    /// Extended-mode atoms.
    static ThetaPoly log_u1();
    static ThetaPoly u1_power(int exponent);

    [[nodiscard]] const TermMap& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] bool extended() const noexcept { return extended_; }
    [[nodiscard]] bool has_extension_atoms() const;
    /// Drops the extended flag; throws if any extension atom survives.
    [[nodiscard]] ThetaPoly to_plain() const;
    ThetaPoly& mark_extended(bool on = true) {
        extended_ = on;
        return *this;
    }

    [[nodiscard]] int max_jet() const noexcept;
    [[nodiscard]] int lambda_degree() const;
    [[nodiscard]] ThetaPoly lambda_coefficient(int k) const;
    /// Homogeneous component of standard degree d and super degree p.
    [[nodiscard]] ThetaPoly component(int d, int p) const;
    [[nodiscard]] std::vector<std::pair<int, int>> bidegrees() const;
    /// Keeps terms satisfying the predicate.
    [[nodiscard]] ThetaPoly filter(const std::function<bool(const Monomial&)>& keep) const;
    [[nodiscard]] ThetaPoly map_coefficients(const std::function<CoeffExpr(const CoeffExpr&)>& f) const;
    /// Coefficient of a monomial (zero if absent).
    [[nodiscard]] CoeffExpr coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, const CoeffExpr& c);

    ThetaPoly& operator+=(const ThetaPoly& other);
    ThetaPoly& operator-=(const ThetaPoly& other);
    ThetaPoly& operator*=(const CoeffExpr& c);

    friend ThetaPoly operator+(ThetaPoly a, const ThetaPoly& b) { return a += b; }
    friend ThetaPoly operator-(ThetaPoly a, const ThetaPoly& b) { return a -= b; }
    friend ThetaPoly operator*(const ThetaPoly& a, const ThetaPoly& b);
    friend ThetaPoly operator*(ThetaPoly a, const CoeffExpr& c) { return a *= c; }
    friend ThetaPoly operator*(const CoeffExpr& c, ThetaPoly a) { return a *= c; }
    ThetaPoly operator-() const;

    friend bool operator==(const ThetaPoly& a, const ThetaPoly& b) { return a.terms_ == b.terms_; }

    [[nodiscard]] std::string render() const;

private:
    TermMap terms_;
    bool extended_ = false;
};

inline ThetaPoly mul(const ThetaPoly& a, const ThetaPoly& b) { return a * b; }

/// d/du^s; s = 0 differentiates the coefficients.
ThetaPoly partial_u(const ThetaPoly& a, int s);
/// Left derivative d/dtheta^s.
ThetaPoly partial_theta(const ThetaPoly& a, int s);
/// The total x-derivative.
ThetaPoly total_derivative(const ThetaPoly& a);
ThetaPoly total_derivative(const ThetaPoly& a, int times);

ThetaPoly subst_lambda(const ThetaPoly& a, const CoeffExpr& value);

} // namespace thetaform
