#include "thetaform/spectral.hpp"

#include <bit>

#include "thetaform/basis.hpp"
#include "thetaform/error.hpp"

namespace thetaform {

namespace {

Rational binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

ThetaPoly th(int s) {
    return ThetaPoly::theta(s);
}

ThetaPoly uj(int s) {
    return ThetaPoly::u(s);
}

} // namespace

ThetaPoly E1Element::reduce() const {
    const int keep_from = q - 1;
    return body.filter([keep_from](const Monomial& m) { return m.max_jet() >= keep_from; });
}

ThetaPoly E1Element::density() const {
    return body * th(0) * th(q);
}

int filtration_level(const ThetaPoly& a, int d) {
    for (const auto& [m, c] : a.terms()) {
        if (m.degree() != d) {
            throw Error("filtration_level: degree mismatch, term " + m.render() + " has degree " +
                        std::to_string(m.degree()) + ", expected " + std::to_string(d));
        }
    }
    return d - a.max_jet();
}

SpectralSequence::SpectralSequence(CoeffExpr g)
    : g_(std::move(g)),
      G_((CoeffExpr::u() - CoeffExpr::lambda()) * g_),
      dG_(ddu(G_)),
      d_lambda_(make_Dlambda(g_)) {}

ThetaPoly SpectralSequence::d0(const ThetaPoly& a, int p, int q) const {
    for (const auto& [m, c] : a.terms()) {
        if (m.degree() != p + q || m.max_jet() > q) {
            throw Error("d0: bidegree mismatch for term " + m.render() + " at (p,q) = (" + std::to_string(p) +
                        "," + std::to_string(q) + ")");
        }
    }
    const CoeffExpr half_dG = Rational(1, 2) * dG_;
    const ThetaPoly x_u = G_ * th(q + 1) + half_dG * (uj(q + 1) * th(0));
    const ThetaPoly x_theta = half_dG * (th(0) * th(q + 1));
    return x_u * partial_u(a, q) + x_theta * partial_theta(a, q);
}

ThetaPoly SpectralSequence::kernel_element(const ThetaPoly& h, const ThetaPoly& h2, int q) const {
    const ThetaPoly lead = G_ * th(q) + (Rational(1, 2) * dG_) * (uj(q) * th(0));
    return lead * h + th(0) * th(q) * h2;
}

ThetaPoly SpectralSequence::image_element(const ThetaPoly& h0, const ThetaPoly& h1, int q) const {
    const ThetaPoly lead = G_ * th(q) + (Rational(1, 2) * dG_) * (uj(q) * th(0));
    return lead * partial_u(h0, q - 1) +
           th(q) * th(0) * (G_ * partial_u(h1, q - 1) - (Rational(1, 2) * dG_) * partial_theta(h0, q - 1));
}

ThetaPoly SpectralSequence::image_preimage(const ThetaPoly& h0, const ThetaPoly& h1) {
    return h0 + th(0) * h1;
}

ThetaPoly SpectralSequence::clean_body(const ThetaPoly& a, int q) const {
    ThetaPoly out = subst_lambda(a, CoeffExpr::u())
                        .filter([q](const Monomial& m) { return !m.has_theta(0) && !m.has_theta(q); });
    if (out.max_jet() > q - 1) {
        throw Error("d1 left the jet window A^(q-1): " + out.render());
    }
    return out;
}

E1Element SpectralSequence::d1(const E1Element& x) const {
    const ThetaPoly& f = x.body;
    ThetaPoly image = d_lambda_(f) + (Rational(x.q - 2, 2) * g_) * (th(1) * f);
    return E1Element{x.p + 1, x.q, clean_body(image, x.q)};
}

E1Element SpectralSequence::d1_direct(const E1Element& x) const {
    const int q = x.q;
    const ThetaPoly full = subst_lambda(d_lambda_(x.density()), CoeffExpr::u());
    ThetaPoly cofactor;
    for (const auto& [m, c] : full.terms()) {
        if (!m.has_theta(0) || !m.has_theta(q)) {
            continue;
        }
        Monomial rest = m;
        rest.set_theta(0, false);
        rest.set_theta(q, false);
        if (rest.max_jet() > q - 1) {
            continue;
        }
        // rest * theta * theta^q reordered into m
        const std::uint64_t mask = rest.theta_mask();
        const int swaps = std::popcount(mask) + std::popcount(mask >> (q + 1));
        cofactor.add_term(rest, swaps % 2 ? -c : c);
    }
    return E1Element{x.p + 1, q, cofactor};
}

CoeffExpr SpectralSequence::u_eigenvalue(const Monomial& m, int q) const {
    Rational w = weight(m) + Rational(q - 2, 2);
    w.canonicalize();
    return w * g_;
}

ThetaPoly SpectralSequence::apply_U(const ThetaPoly& body, int q) const {
    ThetaPoly out;
    for (const auto& [m, c] : body.terms()) {
        out.add_term(m, c * u_eigenvalue(m, q));
    }
    return out;
}

ThetaPoly SpectralSequence::apply_U_inverse(const ThetaPoly& body, int q) const {
    if (!g_.is_monomial()) {
        throw Error("U^{-1} needs a monomial metric");
    }
    ThetaPoly out;
    for (const auto& [m, c] : body.terms()) {
        Rational w = weight(m) + Rational(q - 2, 2);
        if (w == 0) {
            throw Error("zero-weight division on " + m.render());
        }
        w = 1 / w;
        out.add_term(m, (w * c).divided_by(g_));
    }
    return out;
}

ThetaPoly SpectralSequence::apply_V(const ThetaPoly& body, int q) const {
    ThetaPoly out;
    const ThetaPoly g_poly(g_);
    std::vector<ThetaPoly> dg{g_poly};
    for (int s = 2; s <= q - 1; ++s) {
        const ThetaPoly ds = partial_u(body, s);
        if (ds.is_zero()) {
            continue;
        }
        for (int l = 1; l <= s - 1; ++l) {
            while (static_cast<int>(dg.size()) <= l) {
                dg.push_back(total_derivative(dg.back()));
            }
            const CoeffExpr factor(Rational(Rational(s + 2, 2) * binomial(s, l)));
            out += factor * (dg[static_cast<std::size_t>(l)] * uj(s - l) * ds);
        }
    }
    std::vector<ThetaPoly> ddG{ThetaPoly(dG_)};
    for (int s = 1; s <= q - 1; ++s) {
        const ThetaPoly ds = partial_theta(body, s);
        if (ds.is_zero()) {
            continue;
        }
        for (int l = 0; l <= s - 1; ++l) {
            while (static_cast<int>(ddG.size()) <= s - l) {
                ddG.push_back(total_derivative(ddG.back()));
            }
            const CoeffExpr factor(Rational(Rational(l - 1, 2) * binomial(s, l)));
            const ThetaPoly coeff = subst_lambda(ddG[static_cast<std::size_t>(s - l)], CoeffExpr::u());
            out += factor * (coeff * th(l) * ds);
        }
    }
    return out.filter([q](const Monomial& m) { return !m.has_theta(0) && !m.has_theta(q); });
}

ThetaPoly SpectralSequence::apply_V_residual(const ThetaPoly& body, int q) const {
    const E1Element image = d1(E1Element{0, q, body});
    return partial_theta(image.body, 1) - apply_U(body, q);
}

ThetaPoly SpectralSequence::apply_W(const ThetaPoly& body, int q) const {
    const E1Element image = d1(E1Element{0, q, body});
    return image.body - th(1) * apply_U(body, q) - th(1) * apply_V(body, q);
}

E1Element SpectralSequence::homotopy(const E1Element& x) const {
    const int q = x.q;
    ThetaPoly term = apply_U_inverse(partial_theta(x.body, 1), q);
    ThetaPoly result = term;
    if (term.is_zero()) {
        return E1Element{x.p - 1, q, result};
    }
    // V strictly lowers the lexicographic order at fixed degree, which bounds the series.
    const Monomial* top = nullptr;
    for (const auto& [m, c] : term.terms()) {
        if (top == nullptr || lex_compare(m, *top) > 0) {
            top = &m;
        }
    }
    std::size_t cap = 1;
    for (const Monomial& m : e1_basis(x.p - 1, q, true)) {
        if (lex_compare(m, *top) < 0) {
            ++cap;
        }
    }
    for (std::size_t n = 1;; ++n) {
        term = -apply_U_inverse(apply_V(term, q), q);
        if (term.is_zero()) {
            break;
        }
        if (n > cap) {
            throw Error("homotopy series exceeded its lexicographic bound");
        }
        result += term;
    }
    return E1Element{x.p - 1, q, result};
}

std::vector<Monomial> SpectralSequence::e1_basis(int p, int q, bool include_tail) {
    BasisSpec spec;
    spec.degree = p;
    spec.max_jet = q - 1;
    spec.allow_theta0 = false;
    if (!include_tail) {
        spec.require_jet = q - 1;
    }
    return enumerate_monomials(spec);
}

LambdaIndependence check_lambda_independence(const std::vector<CoeffExpr>& t) {
    const CoeffExpr shift = CoeffExpr::u() - CoeffExpr::lambda();
    CoeffExpr total;
    CoeffExpr power(1);
    for (const auto& ti : t) {
        if (ti.lambda_degree() != 0) {
            throw Error("check_lambda_independence: coefficients must be lambda-free");
        }
        total += ti * power;
        power = power * shift;
    }
    LambdaIndependence out;
    out.expression = -(shift * ddu(total)) + Rational(1, 2) * total;
    if (out.expression.lambda_degree() == 0) {
        out.value = t.empty() ? CoeffExpr() : Rational(1, 2) * t.front();
    }
    out.recurrence_plus = true;
    out.recurrence_minus = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const CoeffExpr next = i + 1 < t.size() ? t[i + 1] : CoeffExpr();
        const CoeffExpr rhs = Rational(2 * static_cast<long>(i) + 1, 2) * next;
        out.recurrence_plus = out.recurrence_plus && ddu(t[i]) == rhs;
        out.recurrence_minus = out.recurrence_minus && ddu(t[i]) == -rhs;
    }
    return out;
}

} // namespace thetaform
