#pragma once

// Exact scalar coefficients: Laurent monomials in u and formal function atoms
// F^(k)(u), polynomial in lambda, with rational coefficients and square roots of
// positive rationals. Extended mode additionally admits powers of log(u1).

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace thetaform {

using Rational = mpq_class;

std::string to_string(const Rational& r);

/// F^(order)(u) raised to a nonzero integer power.
struct FunctionAtom {
    std::string name;
    int order = 0;
    int power = 1;

    auto operator<=>(const FunctionAtom&) const = default;
};

/// The non-numeric part of a coefficient term.
struct CoeffMonomial {
    int lambda = 0;             // >= 0
    int u = 0;                  // Laurent exponent of u
    int log_u1 = 0;             // >= 0, extended mode only
    std::uint64_t radicand = 1; // squarefree; 1 means no radical
    std::vector<FunctionAtom> functions; // sorted by (name, order), powers nonzero

    auto operator<=>(const CoeffMonomial&) const = default;

    [[nodiscard]] bool is_one() const noexcept {
        return lambda == 0 && u == 0 && log_u1 == 0 && radicand == 1 && functions.empty();
    }
};

class CoeffExpr {
public:
    using TermMap = std::map<CoeffMonomial, Rational>;

    CoeffExpr() = default;
    CoeffExpr(int value); // NOLINT(google-explicit-constructor)
    CoeffExpr(const Rational& value); // NOLINT(google-explicit-constructor)

    static CoeffExpr u();
    static CoeffExpr lambda();
    static CoeffExpr function(const std::string& name, int order = 0);
    /// Exact square root of a positive rational.
    static CoeffExpr sqrt(const Rational& value);
    static CoeffExpr log_u1();
    static CoeffExpr from_term(CoeffMonomial key, Rational value);

    [[nodiscard]] const TermMap& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] bool is_monomial() const noexcept { return terms_.size() == 1; }
    /// True iff the expression is a plain rational number.
    [[nodiscard]] bool is_rational() const;
    [[nodiscard]] Rational as_rational() const;

    [[nodiscard]] int lambda_degree() const;
    /// Coefficient of lambda^k, a lambda-free expression.
    [[nodiscard]] CoeffExpr lambda_coefficient(int k) const;
    [[nodiscard]] bool has_extension_atoms() const;
    /// True iff no function atom, u or lambda occurs (a pure number, possibly with radicals).
    [[nodiscard]] bool is_numeric() const;
    [[nodiscard]] bool depends_on(const std::string& function_name) const;

    CoeffExpr& operator+=(const CoeffExpr& other);
    CoeffExpr& operator-=(const CoeffExpr& other);
    CoeffExpr& operator*=(const CoeffExpr& other);
    CoeffExpr& operator*=(const Rational& factor);

    friend CoeffExpr operator+(CoeffExpr a, const CoeffExpr& b) { return a += b; }
    friend CoeffExpr operator-(CoeffExpr a, const CoeffExpr& b) { return a -= b; }
    friend CoeffExpr operator*(const CoeffExpr& a, const CoeffExpr& b);
    friend CoeffExpr operator*(CoeffExpr a, const Rational& b) { return a *= b; }
    friend CoeffExpr operator*(const Rational& a, CoeffExpr b) { return b *= a; }
    CoeffExpr operator-() const;

    friend bool operator==(const CoeffExpr& a, const CoeffExpr& b) { return a.terms_ == b.terms_; }

    /// Integer power; negative exponents require a single-term expression.
    [[nodiscard]] CoeffExpr pow(int exponent) const;
    /// Division by a single-term, lambda-free, log-free expression.
    [[nodiscard]] CoeffExpr divided_by(const CoeffExpr& divisor) const;

    void add_term(const CoeffMonomial& key, const Rational& value);

    [[nodiscard]] std::string render() const;

private:
    TermMap terms_;
};

/// Formal d/du. Kills lambda, raises derivative orders of function atoms;
/// log(u1) is independent of u.
CoeffExpr ddu(const CoeffExpr& e);

/// Polynomial derivative in lambda.
CoeffExpr ddlambda(const CoeffExpr& e);

/// Replace lambda by a lambda-free expression.
CoeffExpr subst_lambda(const CoeffExpr& e, const CoeffExpr& value);

/// Replace the function atom `name` (and its derivatives) by a lambda-free
/// expression of u. Derivatives are computed with ddu.
CoeffExpr subst_function(const CoeffExpr& e, const std::string& name, const CoeffExpr& value);

inline bool is_zero(const CoeffExpr& e) { return e.is_zero(); }

/// Antiderivative in u when one exists inside the coefficient ring; returns
/// false when the integrand is not exact (e.g. it needs log u or a bare
/// antiderivative of a function symbol).
bool integrate_u(const CoeffExpr& integrand, CoeffExpr& antiderivative);

} // namespace thetaform
