#include "thetaform/operators.hpp"

#include "thetaform/error.hpp"

namespace thetaform {

EvolutionaryOp::EvolutionaryOp(ThetaPoly x_u, ThetaPoly x_theta, bool odd) : odd_(odd) {
    prolonged_u_.reserve(precomputed_jets + 1);
    prolonged_theta_.reserve(precomputed_jets + 1);
    prolonged_u_.push_back(std::move(x_u));
    prolonged_theta_.push_back(std::move(x_theta));
    for (int s = 1; s <= precomputed_jets; ++s) {
        prolonged_u_.push_back(total_derivative(prolonged_u_.back()));
        prolonged_theta_.push_back(total_derivative(prolonged_theta_.back()));
    }
}

ThetaPoly EvolutionaryOp::prolonged_u(int s) const {
    if (s <= precomputed_jets) {
        return prolonged_u_[static_cast<std::size_t>(s)];
    }
    return total_derivative(prolonged_u_.back(), s - precomputed_jets);
}

ThetaPoly EvolutionaryOp::prolonged_theta(int s) const {
    if (s <= precomputed_jets) {
        return prolonged_theta_[static_cast<std::size_t>(s)];
    }
    return total_derivative(prolonged_theta_.back(), s - precomputed_jets);
}

ThetaPoly EvolutionaryOp::apply(const ThetaPoly& a) const {
    ThetaPoly out;
    const int top = a.max_jet();
    for (int s = 0; s <= top; ++s) {
        if (ThetaPoly du = partial_u(a, s); !du.is_zero()) {
            out += prolonged_u(s) * du;
        }
        if (ThetaPoly dt = partial_theta(a, s); !dt.is_zero()) {
            out += prolonged_theta(s) * dt;
        }
    }
    out.mark_extended(a.extended() || out.extended());
    return out;
}

EvolutionaryOp EvolutionaryOp::combine(const CoeffExpr& alpha, const EvolutionaryOp& a, const CoeffExpr& beta,
                                       const EvolutionaryOp& b) {
    if (a.odd_ != b.odd_) {
        throw Error("cannot combine operators of different parity");
    }
    return EvolutionaryOp(alpha * a.x_u() + beta * b.x_u(), alpha * a.x_theta() + beta * b.x_theta(), a.odd_);
}

EvolutionaryOp make_hydrodynamic_op(const CoeffExpr& h) {
    const CoeffExpr half_dh = Rational(1, 2) * ddu(h);
    const ThetaPoly theta = ThetaPoly::theta(0);
    const ThetaPoly theta1 = ThetaPoly::theta(1);
    ThetaPoly x_u = h * theta1 + half_dh * (ThetaPoly::u(1) * theta);
    ThetaPoly x_theta = half_dh * (theta * theta1);
    return EvolutionaryOp(std::move(x_u), std::move(x_theta), true);
}

EvolutionaryOp make_D1(const CoeffExpr& g) {
    return make_hydrodynamic_op(g);
}

EvolutionaryOp make_D2(const CoeffExpr& g) {
    return make_hydrodynamic_op(CoeffExpr::u() * g);
}

EvolutionaryOp make_Dlambda(const CoeffExpr& g) {
    return make_hydrodynamic_op((CoeffExpr::u() - CoeffExpr::lambda()) * g);
}

ThetaPoly variational_derivative_u(const ThetaPoly& a) {
    ThetaPoly out;
    const int top = a.max_jet();
    for (int s = 0; s <= top; ++s) {
        ThetaPoly t = total_derivative(partial_u(a, s), s);
        if (s % 2 == 1) {
            out -= t;
        } else {
            out += t;
        }
    }
    return out;
}

ThetaPoly variational_derivative_theta(const ThetaPoly& a) {
    ThetaPoly out;
    const int top = a.max_jet();
    for (int s = 0; s <= top; ++s) {
        ThetaPoly t = total_derivative(partial_theta(a, s), s);
        if (s % 2 == 1) {
            out -= t;
        } else {
            out += t;
        }
    }
    return out;
}

std::optional<ThetaPoly> integrate_total_derivative(const ThetaPoly& a) {
    ThetaPoly rest = a;
    ThetaPoly witness;
    constexpr int max_steps = 100000;
    for (int step = 0; step < max_steps; ++step) {
        if (rest.is_zero()) {
            return witness;
        }
        const int top = rest.max_jet();
        if (top == 0) {
            return std::nullopt;
        }
        // theta^top enters d(w) only through theta^top * dw/dtheta^{top-1}.
        if (ThetaPoly b = partial_theta(rest, top); !b.is_zero()) {
            if (b.max_jet() >= top) {
                return std::nullopt;
            }
            ThetaPoly w = ThetaPoly::theta(top - 1) * b;
            if (w.size() != b.size()) {
                return std::nullopt; // b contains theta^{top-1}
            }
            witness += w;
            rest -= total_derivative(w);
            if (!partial_theta(rest, top).is_zero()) {
                return std::nullopt;
            }
            continue;
        }
        // u^top enters linearly with cofactor dw/du^{top-1}.
        const ThetaPoly cofactor = partial_u(rest, top);
        if (cofactor.max_jet() >= top) {
            return std::nullopt;
        }
        ThetaPoly w;
        for (const auto& [m, c] : cofactor.terms()) {
            if (top - 1 >= 1) {
                const int e = m.u_exponent(top - 1);
                if (e == -1) {
                    return std::nullopt;
                }
                Monomial nm = m;
                nm.set_u_exponent(top - 1, e + 1);
                w.add_term(nm, c * Rational(1, e + 1));
            } else {
                CoeffExpr antiderivative;
                if (!integrate_u(c, antiderivative)) {
                    return std::nullopt;
                }
                w.add_term(m, antiderivative);
            }
        }
        witness += w;
        rest -= total_derivative(w);
        if (rest.max_jet() >= top && !partial_u(rest, top).is_zero()) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

ExactnessResult is_total_derivative(const ThetaPoly& a) {
    ExactnessResult result;
    if (a.is_zero()) {
        result.exact = true;
        result.witness = ThetaPoly();
        return result;
    }
    const bool euler_zero = variational_derivative_u(a).is_zero() && variational_derivative_theta(a).is_zero();
    if (!euler_zero) {
        return result;
    }
    // Euler-invisible degree-zero part: numeric constants are never total derivatives.
    const ThetaPoly jet_free = a.filter([](const Monomial& m) { return m.degree() == 0; });
    if (!jet_free.is_zero()) {
        result.obstruction = "constant obstruction";
        return result;
    }
    result.exact = true;
    if (!a.has_extension_atoms()) {
        result.witness = integrate_total_derivative(a);
        if (result.witness && !(total_derivative(*result.witness) == a)) {
            result.witness.reset();
        }
    }
    return result;
}

} // namespace thetaform
