#pragma once

// Seeded samplers for coefficients, monomials and densities. Every sampler is a
// pure function of the generator state, so a sample indexed by (seed, i) is
// reproducible regardless of which thread draws it.

#include <algorithm>
#include <cstdint>
#include <random>

#include "thetaform/algebra.hpp"
#include "thetaform/coeff.hpp"

namespace thetaform {

/// Generator for sample `index` of a stream identified by `seed` and `stream`.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

inline Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    int n = num(rng);
    if (n == 0) {
        n = 1;
    }
    Rational r(n, den(rng));
    r.canonicalize();
    return r;
}

/// Random coefficient expression; with_lambda controls lambda occurrence.
inline CoeffExpr random_coeff(std::mt19937_64& rng, bool with_lambda = true, int max_terms = 3) {
    std::uniform_int_distribution<int> terms(1, max_terms);
    std::uniform_int_distribution<int> small(0, 2);
    std::uniform_int_distribution<int> coin(0, 1);
    CoeffExpr out;
    const int n = terms(rng);
    for (int i = 0; i < n; ++i) {
        CoeffExpr t(random_rational(rng));
        if (with_lambda) {
            t = t * CoeffExpr::lambda().pow(small(rng));
        }
        t = t * CoeffExpr::u().pow(small(rng));
        if (coin(rng)) {
            t = t * CoeffExpr::function("g", small(rng)).pow(1 + coin(rng));
        }
        if (coin(rng)) {
            t = t * CoeffExpr::function("c", small(rng));
        }
        if (small(rng) == 0) {
            t = t * CoeffExpr::sqrt(2);
        }
        out += t;
    }
    return out;
}

/// Random monomial of standard degree exactly `degree`, jets at most `max_jet`.
inline Monomial random_monomial(std::mt19937_64& rng, int degree, int max_jet, bool allow_theta0 = true) {
    for (;;) {
        Monomial m;
        int left = degree;
        std::uniform_int_distribution<int> coin(0, 2);
        for (int s = std::min(max_jet, degree); s >= 1 && left > 0; --s) {
            if (s <= left && coin(rng) == 0) {
                m.set_theta(s, true);
                left -= s;
            }
            std::uniform_int_distribution<int> e(0, left / s);
            const int k = e(rng);
            m.set_u_exponent(s, k);
            left -= k * s;
        }
        if (left != 0) {
            continue;
        }
        if (allow_theta0 && coin(rng) == 0) {
            m.set_theta(0, true);
        }
        return m;
    }
}

inline ThetaPoly random_poly(std::mt19937_64& rng, int degree, int max_jet, int terms = 3, bool with_lambda = false) {
    ThetaPoly p;
    for (int i = 0; i < terms; ++i) {
        p += ThetaPoly::term(random_monomial(rng, degree, max_jet), random_coeff(rng, with_lambda, 2));
    }
    return p;
}

} // namespace thetaform
