#include "thetaform/basis.hpp"

#include <algorithm>

namespace thetaform {

namespace {

void extend(const BasisSpec& spec, int s, int left, Monomial& current, std::vector<Monomial>& out) {
    if (s == 0) {
        if (left != 0) {
            return;
        }
        for (int t0 = 0; t0 <= (spec.allow_theta0 && !(spec.forbidden_thetas & 1U) ? 1 : 0); ++t0) {
            Monomial m = current;
            m.set_theta(0, t0 == 1);
            if (spec.super_degree && m.super_degree() != *spec.super_degree) {
                continue;
            }
            if (spec.require_jet && *spec.require_jet > 0 &&
                m.u_exponent(*spec.require_jet) == 0 && !m.has_theta(*spec.require_jet)) {
                continue;
            }
            out.push_back(m);
        }
        return;
    }
    const bool theta_allowed = ((spec.forbidden_thetas >> s) & 1U) == 0;
    for (int t = 0; t <= (theta_allowed ? 1 : 0); ++t) {
        const int after_theta = left - t * s;
        if (after_theta < 0) {
            break;
        }
        for (int e = 0; e * s <= after_theta; ++e) {
            Monomial m = current;
            m.set_theta(s, t == 1);
            m.set_u_exponent(s, e);
            extend(spec, s - 1, after_theta - e * s, m, out);
        }
    }
}

} // namespace

std::vector<Monomial> enumerate_monomials(const BasisSpec& spec) {
    std::vector<Monomial> out;
    Monomial start;
    extend(spec, spec.max_jet, spec.degree, start, out);
    std::sort(out.begin(), out.end(),
              [](const Monomial& a, const Monomial& b) { return lex_compare(a, b) < 0; });
    return out;
}

std::optional<Monomial> sample_monomial(const BasisSpec& spec, std::mt19937_64& rng) {
    const auto all = enumerate_monomials(spec);
    if (all.empty()) {
        return std::nullopt;
    }
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return all[pick(rng)];
}

} // namespace thetaform
