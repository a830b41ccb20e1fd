#pragma once

#include <optional>
#include <random>
#include <vector>

#include "thetaform/algebra.hpp"

namespace thetaform {

struct BasisSpec {
    int degree = 0;
    int max_jet = 0;
    /// Restrict to this super degree when set.
    std::optional<int> super_degree;
    bool allow_theta0 = true;
    /// Only monomials containing u^min_jet or theta^min_jet (quotient by lower jets).
    std::optional<int> require_jet;
    /// theta indices that must not occur.
    std::uint64_t forbidden_thetas = 0;
};

/// All monomials of the given standard degree within the jet bound, in lex order.
std::vector<Monomial> enumerate_monomials(const BasisSpec& spec);

/// Uniform sample from enumerate_monomials(spec); nullopt when the basis is empty.
std::optional<Monomial> sample_monomial(const BasisSpec& spec, std::mt19937_64& rng);

} // namespace thetaform
