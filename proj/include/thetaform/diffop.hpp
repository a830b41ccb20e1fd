#pragma once

// Scalar differential operators sum eps^e A_{e,k} d^k with even coefficients,
// truncated in eps.

#include <map>
#include <string>
#include <utility>

#include "thetaform/algebra.hpp"

namespace thetaform {

class DiffOp {
public:
    /// Key (eps power, derivative order).
    using Key = std::pair<int, int>;
    using TermMap = std::map<Key, ThetaPoly>;

    DiffOp() = default;
    /// Multiplication operator by a.
    static DiffOp multiplication(const ThetaPoly& a, int eps_power = 0);
    /// a * d^k.
    static DiffOp term(int eps_power, int k, const ThetaPoly& a);
    static DiffOp identity() { return multiplication(ThetaPoly(1)); }

    [[nodiscard]] const TermMap& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] ThetaPoly coefficient(int eps_power, int k) const;
    [[nodiscard]] int min_eps() const;
    [[nodiscard]] int max_eps() const;

    void add(int eps_power, int k, const ThetaPoly& a);
    [[nodiscard]] DiffOp truncated(int max_eps) const;
    /// Terms at exactly this eps power.
    [[nodiscard]] DiffOp eps_slice(int eps_power) const;

    DiffOp& operator+=(const DiffOp& o);
    DiffOp& operator-=(const DiffOp& o);
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    friend DiffOp operator*(const CoeffExpr& c, const DiffOp& a);
    DiffOp operator-() const;
    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }

    /// Applies the coefficient map f to every coefficient.
    [[nodiscard]] DiffOp map(const std::function<ThetaPoly(const ThetaPoly&)>& f) const;

    /// Rendered as eps^e*(A)*d^k summands, ordered by (e, k).
    [[nodiscard]] std::string render() const;

private:
    TermMap terms_;
};

/// a o b, keeping eps powers up to max_eps.
DiffOp compose(const DiffOp& a, const DiffOp& b, int max_eps);
/// Formal adjoint: (A d^k)^dagger = (-d)^k o A.
DiffOp adjoint(const DiffOp& a);
/// (K - K^dagger)/2.
DiffOp skew_part(const DiffOp& a);
/// (K + K^dagger)/2.
DiffOp symmetric_part(const DiffOp& a);
/// Inverse of L = 1 + N with N of eps order >= 1, by the Neumann series up to max_eps.
DiffOp neumann_inverse(const DiffOp& l, int max_eps);

} // namespace thetaform
