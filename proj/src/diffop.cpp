#include "thetaform/diffop.hpp"

#include "thetaform/error.hpp"

namespace thetaform {

namespace {

Rational binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

} // namespace

DiffOp DiffOp::multiplication(const ThetaPoly& a, int eps_power) {
    return term(eps_power, 0, a);
}

DiffOp DiffOp::term(int eps_power, int k, const ThetaPoly& a) {
    DiffOp out;
    out.add(eps_power, k, a);
    return out;
}

ThetaPoly DiffOp::coefficient(int eps_power, int k) const {
    auto it = terms_.find({eps_power, k});
    return it == terms_.end() ? ThetaPoly() : it->second;
}

int DiffOp::min_eps() const {
    return terms_.empty() ? 0 : terms_.begin()->first.first;
}

int DiffOp::max_eps() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.first;
}

void DiffOp::add(int eps_power, int k, const ThetaPoly& a) {
    if (k < 0) {
        throw Error("negative derivative order in differential operator");
    }
    if (a.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(Key{eps_power, k}, a);
    if (!inserted) {
        it->second += a;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

DiffOp DiffOp::truncated(int max_eps) const {
    DiffOp out;
    for (const auto& [key, a] : terms_) {
        if (key.first <= max_eps) {
            out.terms_.emplace(key, a);
        }
    }
    return out;
}

DiffOp DiffOp::eps_slice(int eps_power) const {
    DiffOp out;
    for (const auto& [key, a] : terms_) {
        if (key.first == eps_power) {
            out.terms_.emplace(key, a);
        }
    }
    return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    for (const auto& [key, a] : o.terms_) {
        add(key.first, key.second, a);
    }
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
    for (const auto& [key, a] : o.terms_) {
        add(key.first, key.second, -a);
    }
    return *this;
}

DiffOp operator*(const CoeffExpr& c, const DiffOp& a) {
    DiffOp out;
    for (const auto& [key, p] : a.terms_) {
        out.add(key.first, key.second, c * p);
    }
    return out;
}

DiffOp DiffOp::operator-() const {
    return CoeffExpr(-1) * *this;
}

DiffOp DiffOp::map(const std::function<ThetaPoly(const ThetaPoly&)>& f) const {
    DiffOp out;
    for (const auto& [key, a] : terms_) {
        out.add(key.first, key.second, f(a));
    }
    return out;
}

std::string DiffOp::render() const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& [key, a] : terms_) {
        if (!out.empty()) {
            out += " + ";
        }
        if (key.first != 0) {
            out += "eps" + (key.first == 1 ? std::string() : "^" + std::to_string(key.first)) + "*";
        }
        out += "(" + a.render() + ")";
        if (key.second > 0) {
            out += "*d" + (key.second == 1 ? std::string() : "^" + std::to_string(key.second));
        }
    }
    return out;
}

DiffOp compose(const DiffOp& a, const DiffOp& b, int max_eps) {
    DiffOp out;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            const int e = ka.first + kb.first;
            if (e > max_eps) {
                continue;
            }
            // d^k o B = sum_j C(k,j) d^j(B) d^(k-j)
            ThetaPoly dj = cb;
            for (int j = 0; j <= ka.second; ++j) {
                if (j > 0) {
                    dj = total_derivative(dj);
                }
                if (dj.is_zero()) {
                    break;
                }
                out.add(e, ka.second - j + kb.second, CoeffExpr(binomial(ka.second, j)) * (ca * dj));
            }
        }
    }
    return out;
}

DiffOp adjoint(const DiffOp& a) {
    DiffOp out;
    for (const auto& [key, c] : a.terms()) {
        const int k = key.second;
        ThetaPoly dj = c;
        for (int j = 0; j <= k; ++j) {
            if (j > 0) {
                dj = total_derivative(dj);
            }
            if (dj.is_zero()) {
                break;
            }
            const Rational sign = k % 2 ? -1 : 1;
            out.add(key.first, k - j, CoeffExpr(Rational(sign * binomial(k, j))) * dj);
        }
    }
    return out;
}

DiffOp skew_part(const DiffOp& a) {
    return CoeffExpr(Rational(1, 2)) * (a - adjoint(a));
}

DiffOp symmetric_part(const DiffOp& a) {
    return CoeffExpr(Rational(1, 2)) * (a + adjoint(a));
}

DiffOp neumann_inverse(const DiffOp& l, int max_eps) {
    const DiffOp n = l - DiffOp::identity();
    for (const auto& [key, c] : n.terms()) {
        if (key.first < 1) {
            throw Error("Neumann inverse needs L = 1 + O(eps)");
        }
    }
    DiffOp result = DiffOp::identity();
    DiffOp power = DiffOp::identity();
    for (int k = 1; k <= max_eps; ++k) {
        power = -compose(n, power, max_eps);
        if (power.is_zero()) {
            break;
        }
        result += power;
    }
    return result;
}

} // namespace thetaform
