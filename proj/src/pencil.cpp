#include "thetaform/pencil.hpp"

#include <bit>
#include <regex>

#include "thetaform/error.hpp"
#include "thetaform/operators.hpp"

namespace thetaform {

namespace {

Rational factorial(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(r);
}

Rational int_pow(int base, int exp) {
    Rational r(1);
    for (int i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

std::optional<CoeffExpr> as_jet_free(const ThetaPoly& a) {
    if (a.is_zero()) {
        return CoeffExpr();
    }
    if (a.size() != 1 || !a.terms().begin()->first.is_one()) {
        return std::nullopt;
    }
    return a.terms().begin()->second;
}

EpsPoly truncated_product(const EpsPoly& a, const EpsPoly& b, int order) {
    EpsPoly out;
    for (const auto& [ka, pa] : a.terms()) {
        for (const auto& [kb, pb] : b.terms()) {
            if (ka + kb <= order) {
                out.add(ka + kb, pa * pb);
            }
        }
    }
    return out;
}

DiffOp normal_form_operator(const ThetaPoly& p) {
    DiffOp m;
    for (const auto& [k, b] : bivector_normal_form(p)) {
        m.add(0, k, b);
    }
    return m;
}

} // namespace

bool DeltaBracket::is_skew() const {
    return (op + adjoint(op)).is_zero();
}

bool DeltaBracket::eps_graded() const {
    for (const auto& [key, a] : op.terms()) {
        for (const auto& [d, p] : a.bidegrees()) {
            if (p != 0 || d + key.second != 1 + key.first) {
                return false;
            }
        }
    }
    return true;
}

std::string DeltaBracket::render() const {
    return rename_coordinate(op.render(), coordinate);
}

std::string rename_coordinate(const std::string& text, const std::string& name) {
    if (name == "u") {
        return text;
    }
    static const std::regex jet(R"(\bu(\d*)\b)");
    return std::regex_replace(text, jet, name + "$1");
}

std::map<int, ThetaPoly> bivector_normal_form(const ThetaPoly& p) {
    for (const auto& [m, c] : p.terms()) {
        if (m.super_degree() != 2) {
            throw Error("not a bivector: " + m.render());
        }
    }
    std::map<int, ThetaPoly> out;
    ThetaPoly work = p;
    while (!work.is_zero()) {
        ThetaPoly next;
        for (const auto& [m, c] : work.terms()) {
            const int i = std::countr_zero(m.theta_mask());
            Monomial rest = m;
            rest.set_theta(i, false);
            if (i == 0) {
                out[std::countr_zero(rest.theta_mask())].add_term(rest, c);
                continue;
            }
            // theta^i Z = d(theta^(i-1) Z) - theta^(i-1) dZ
            next -= ThetaPoly::theta(i - 1) * total_derivative(ThetaPoly::term(rest, c));
        }
        work = next;
    }
    // strip the remaining theta^k from the cofactors
    std::map<int, ThetaPoly> stripped;
    for (const auto& [k, poly] : out) {
        ThetaPoly b;
        for (const auto& [m, c] : poly.terms()) {
            Monomial n = m;
            n.set_theta(k, false);
            b.add_term(n, c);
        }
        if (!b.is_zero()) {
            stripped.emplace(k, b);
        }
    }
    return stripped;
}

DeltaBracket theta_to_delta(const EpsPoly& p, const std::string& coordinate) {
    DeltaBracket out;
    out.coordinate = coordinate;
    for (const auto& [e, poly] : p.terms()) {
        const DiffOp k = skew_part(normal_form_operator(poly));
        for (const auto& [key, a] : k.terms()) {
            out.op.add(e, key.second, a);
        }
    }
    if (!out.is_skew()) {
        throw Error("skewness violation");
    }
    return out;
}

EpsPoly delta_to_theta(const DeltaBracket& b) {
    if (!b.is_skew()) {
        throw Error("skewness violation");
    }
    EpsPoly out;
    for (const auto& [key, a] : b.op.terms()) {
        out.add(key.first, a * (ThetaPoly::theta(0) * ThetaPoly::theta(key.second)));
    }
    return out;
}

CoeffExpr canonical_coordinate(const CoeffExpr& g1, const CoeffExpr& g2) {
    if (g1.is_zero()) {
        throw Error("canonical coordinate: g1 vanishes");
    }
    if (g1.is_monomial()) {
        return g2.divided_by(g1);
    }
    if (g2 == CoeffExpr::u() * g1) {
        return CoeffExpr::u();
    }
    throw Error("canonical coordinate: ratio is not representable");
}

CentralInvariant central_invariant(const DeltaBracket& b1, const DeltaBracket& b2) {
    const auto g1 = as_jet_free(b1.coefficient(0, 1));
    const auto g2 = as_jet_free(b2.coefficient(0, 1));
    if (!g1 || !g2 || g1->is_zero()) {
        throw Error("not in canonical coordinate: dispersionless parts are not hydrodynamic");
    }
    for (const auto& [b, g] : {std::pair{&b1, *g1}, std::pair{&b2, *g2}}) {
        const ThetaPoly expected = (Rational(1, 2) * ddu(g)) * ThetaPoly::u(1);
        if (b->coefficient(0, 0) != expected) {
            throw Error("not in canonical coordinate: dispersionless parts are not hydrodynamic");
        }
        for (const auto& [key, a] : b->op.terms()) {
            if (key.first == 0 && key.second > 1) {
                throw Error("not in canonical coordinate: dispersionless parts are not hydrodynamic");
            }
        }
    }
    if (*g2 != CoeffExpr::u() * *g1) {
        throw Error("not in canonical coordinate");
    }
    const auto q1 = as_jet_free(b1.coefficient(2, 3));
    const auto q2 = as_jet_free(b2.coefficient(2, 3));
    if (!q1 || !q2) {
        throw Error("eps^2 delta''' coefficients must be functions of u");
    }
    if (!g1->is_monomial()) {
        throw Error("central invariant: metric must be a single term to divide by it");
    }
    CentralInvariant out{*g1, *q1, *q2, {}};
    out.c = (*q2 - CoeffExpr::u() * *q1).divided_by(CoeffExpr(3) * g1->pow(2));
    return out;
}

EpsPoly substitute_jets(const ThetaPoly& a, const EpsPoly& F, int order) {
    const EpsPoly delta = F - EpsPoly(ThetaPoly(CoeffExpr::u()));
    if (!delta.is_zero() && delta.min_power() < 1) {
        throw Error("Miura transform must be the identity at eps^0");
    }
    std::vector<EpsPoly> jets{F};
    EpsPoly out;
    for (const auto& [m, c] : a.terms()) {
        if (m.super_degree() != 0 || m.has_negative_exponent()) {
            throw Error("substitution needs plain theta-free coefficients");
        }
        // Taylor expansion of the coefficient around u
        EpsPoly value;
        EpsPoly dpow(ThetaPoly(1));
        CoeffExpr deriv = c;
        for (int n = 0; n <= order; ++n) {
            value += EpsPoly(ThetaPoly(deriv * (1 / factorial(n)))) * dpow;
            dpow = truncated_product(dpow, delta, order);
            if (dpow.is_zero()) {
                break;
            }
            deriv = ddu(deriv);
        }
        value = value.truncated(order);
        for (int s = 1; s <= m.max_jet(); ++s) {
            while (static_cast<int>(jets.size()) <= s) {
                EpsPoly next;
                for (const auto& [e, p] : jets.back().terms()) {
                    next.add(e, total_derivative(p));
                }
                jets.push_back(next);
            }
            for (int k = 0; k < m.u_exponent(s); ++k) {
                value = truncated_product(value, jets[static_cast<std::size_t>(s)], order);
            }
        }
        out += value;
    }
    return out;
}

DeltaBracket miura_transform(const DeltaBracket& b, const MiuraTransform& f, int order) {
    if (b.order && order > *b.order) {
        throw Error("order overflow: bracket known to eps^" + std::to_string(*b.order) + ", requested eps^" +
                    std::to_string(order));
    }
    DiffOp k_sub;
    for (const auto& [key, a] : b.op.terms()) {
        const EpsPoly sub = substitute_jets(a, f.F, order - key.first);
        for (const auto& [e, p] : sub.terms()) {
            k_sub.add(key.first + e, key.second, p);
        }
    }
    DiffOp l;
    for (const auto& [e, fe] : f.F.terms()) {
        for (int s = 0; s <= fe.max_jet(); ++s) {
            l.add(e, s, partial_u(fe, s));
        }
    }
    const DiffOp l_inv = neumann_inverse(l, order);
    const DiffOp ldag_inv = neumann_inverse(adjoint(l), order);
    DeltaBracket out;
    out.coordinate = f.target;
    out.order = order;
    out.op = compose(compose(l_inv, k_sub.truncated(order), order), ldag_inv, order);
    if (!out.is_skew()) {
        throw Error("skewness violation");
    }
    return out;
}

DeltaBracket expand_lattice_bracket(const LatticeBracket& b, const std::optional<PointSubstitution>& subst,
                                    int order) {
    std::vector<LatticeTerm> terms = b.terms;
    if (subst) {
        // {u(x),u(y)} = phi(x) phi(y) {v(x),v(y)}
        LatticePoly phi_x;
        LatticePoly phi_y;
        for (const auto& [key, r] : subst->jacobian.terms()) {
            if (key.lambda != 0 || key.log_u1 != 0 || key.radicand != 1 || !key.functions.empty() || key.u < 0) {
                throw Error("lattice substitution jacobian must be a polynomial in the new coordinate");
            }
            LatticeMonomial mx;
            LatticeMonomial my;
            if (key.u > 0) {
                mx[LatticePoint{false, 0}] = key.u;
                my[LatticePoint{true, 0}] = key.u;
            }
            phi_x[mx] += r;
            phi_y[my] += r;
        }
        for (auto& t : terms) {
            LatticePoly scaled;
            for (const auto& [mono, r] : t.coeff) {
                if (!mono.empty()) {
                    throw Error("lattice substitution needs coefficients free of the old coordinate");
                }
                for (const auto& [mx, rx] : phi_x) {
                    for (const auto& [my, ry] : phi_y) {
                        LatticeMonomial m = mx;
                        for (const auto& [pt, e] : my) {
                            m[pt] += e;
                        }
                        scaled[m] += r * rx * ry;
                    }
                }
            }
            t.coeff = scaled;
        }
    }

    DeltaBracket out;
    out.coordinate = subst ? subst->coordinate : b.coordinate;
    out.order = order;
    for (const LatticeTerm& t : terms) {
        const int budget = order - t.eps_power;
        if (budget < 0) {
            continue;
        }
        EpsPoly coeff;
        for (const auto& [mono, r] : t.coeff) {
            EpsPoly value{ThetaPoly(CoeffExpr(r))};
            for (const auto& [pt, e] : mono) {
                if (e < 0) {
                    throw Error("negative powers in lattice coefficients are not supported");
                }
                // y is eliminated on the support of delta(x - y + shift eps)
                const int m = pt.offset + (pt.at_y ? t.shift : 0);
                EpsPoly shifted;
                for (int j = 0; j <= budget; ++j) {
                    const ThetaPoly jet = j == 0 ? ThetaPoly(CoeffExpr::u()) : ThetaPoly::u(j);
                    shifted.add(j, CoeffExpr(int_pow(m, j) / factorial(j)) * jet);
                }
                for (int k = 0; k < e; ++k) {
                    value = truncated_product(value, shifted, budget);
                }
            }
            coeff += value;
        }
        for (const auto& [e1, p] : coeff.terms()) {
            for (int j = 0; e1 + j <= budget; ++j) {
                const Rational w = int_pow(t.shift, j) / factorial(j);
                if (w != 0) {
                    out.op.add(t.eps_power + e1 + j, j, CoeffExpr(w) * p);
                }
            }
        }
    }
    if (!out.is_skew()) {
        throw Error("skewness violation");
    }
    return out;
}

EpsPoly deformation_order2(const CoeffExpr& g, const CoeffExpr& c, const Rational& theta3_weight) {
    const CoeffExpr u = CoeffExpr::u();
    const CoeffExpr g1 = ddu(g);
    const CoeffExpr g2 = ddu(g1);
    const CoeffExpr c1 = ddu(c);
    auto th = [](int s) { return ThetaPoly::theta(s); };
    auto uj = [](int s) { return ThetaPoly::u(s); };
    const ThetaPoly p0 = ((u - CoeffExpr::lambda()) * g) * (th(0) * th(1));
    ThetaPoly q = (theta3_weight * (c * g * g)) * (th(0) * th(3)) +
                  (CoeffExpr(9) * c * g * g1 + CoeffExpr(6) * c1 * g * g) * (uj(1) * th(0) * th(2)) +
                  (CoeffExpr(-5) * c * g1 * g1 + c1 * g * g1 + CoeffExpr(4) * c * g * g2) *
                      (uj(1) * uj(1) * th(0) * th(1)) +
                  (CoeffExpr(5) * c * g * g1) * (uj(2) * th(0) * th(1));
    q *= CoeffExpr(Rational(1, 2));
    EpsPoly out(p0);
    out.add(2, q);
    return out;
}

DeformationCheck verify_deformation(const CoeffExpr& g, const CoeffExpr& c, const Rational& theta3_weight) {
    const ThetaPoly q = deformation_order2(g, c, theta3_weight).at(2);
    DeformationCheck out;
    out.residual = make_Dlambda(g)(q);
    out.euler_u = variational_derivative_u(out.residual);
    out.euler_theta = variational_derivative_theta(out.residual);
    out.holds = out.euler_u.is_zero() && out.euler_theta.is_zero();
    if (out.holds) {
        out.witness = integrate_total_derivative(out.residual);
    }
    return out;
}

DlzResult dlz_generator(const CoeffExpr& g, const CoeffExpr& c) {
    const ThetaPoly log_density = c * ThetaPoly::u(1) * ThetaPoly::log_u1();
    const EvolutionaryOp d1 = make_D1(g);
    const EvolutionaryOp d2 = make_D2(g);
    DlzResult out;
    out.raw = d1(d2(log_density) - d1(CoeffExpr::u() * log_density));

    const DiffOp k = skew_part(normal_form_operator(out.raw));
    for (const auto& [key, a] : k.terms()) {
        if (a.has_extension_atoms()) {
            throw Error("extension atoms persist: " + a.render());
        }
    }
    for (const auto& [key, a] : k.terms()) {
        out.reduced += a.to_plain() * (ThetaPoly::theta(0) * ThetaPoly::theta(key.second));
    }

    const DiffOp kq = skew_part(normal_form_operator(deformation_order2(g, c).at(2)));
    if (kq.is_zero() || k.is_zero()) {
        if (!k.is_zero()) {
            throw Error("generator is nonzero while the reference density vanishes");
        }
        out.normalization = kq.is_zero() ? std::nullopt : std::optional<Rational>(0);
        return out;
    }
    const auto& [key, ref] = *kq.terms().begin();
    const auto& ref_term = *ref.terms().begin();
    const CoeffExpr mine = k.coefficient(key.first, key.second).coefficient(ref_term.first);
    const auto it = mine.terms().find(ref_term.second.terms().begin()->first);
    if (it == mine.terms().end()) {
        throw Error("generator class is not proportional to the deformation");
    }
    const Rational r = it->second / ref_term.second.terms().begin()->second;
    if (CoeffExpr(r) * kq != k) {
        throw Error("generator class is not proportional to the deformation");
    }
    out.normalization = r;
    out.normalized = CoeffExpr(Rational(1 / r)) * out.reduced;
    return out;
}

} // namespace thetaform
