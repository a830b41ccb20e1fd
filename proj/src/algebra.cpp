#include "thetaform/algebra.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "thetaform/error.hpp"

namespace thetaform {

namespace {

std::uint64_t bit(int s) {
    return std::uint64_t{1} << s;
}

// Number of thetas with index below s.
int thetas_below(std::uint64_t mask, int s) {
    return std::popcount(mask & (bit(s) - 1));
}

int parity_sign(int n) {
    return (n & 1) ? -1 : 1;
}

void check_theta_index(int s) {
    if (s < 0 || s > max_theta_index) {
        throw Error("theta index out of range: " + std::to_string(s));
    }
}

} // namespace

// ---- Monomial --------------------------------------------------------------

Monomial Monomial::u(int s, int exponent) {
    Monomial m;
    m.set_u_exponent(s, exponent);
    return m;
}

Monomial Monomial::theta(int s) {
    Monomial m;
    m.set_theta(s, true);
    return m;
}

void Monomial::set_u_exponent(int s, int exponent) {
    if (s < 1) {
        throw Error("u^s exponents are indexed from s = 1");
    }
    if (static_cast<int>(u_.size()) < s) {
        u_.resize(static_cast<std::size_t>(s), 0);
    }
    u_[static_cast<std::size_t>(s - 1)] = exponent;
    trim();
}

void Monomial::set_theta(int s, bool present) {
    check_theta_index(s);
    if (present) {
        theta_ |= bit(s);
    } else {
        theta_ &= ~bit(s);
    }
}

void Monomial::trim() {
    while (!u_.empty() && u_.back() == 0) {
        u_.pop_back();
    }
}

int Monomial::max_jet() const noexcept {
    const int from_u = static_cast<int>(u_.size());
    const int from_theta = theta_ == 0 ? 0 : 63 - std::countl_zero(theta_);
    return std::max(from_u, from_theta);
}

int Monomial::degree() const noexcept {
    int d = 0;
    for (std::size_t i = 0; i < u_.size(); ++i) {
        d += static_cast<int>(i + 1) * u_[i];
    }
    for (std::uint64_t t = theta_; t != 0; t &= t - 1) {
        d += std::countr_zero(t);
    }
    return d;
}

int Monomial::super_degree() const noexcept {
    return std::popcount(theta_);
}

bool Monomial::has_negative_exponent() const noexcept {
    return std::any_of(u_.begin(), u_.end(), [](int e) { return e < 0; });
}

int multiply(const Monomial& a, const Monomial& b, Monomial& out) {
    if ((a.theta_ & b.theta_) != 0) {
        return 0;
    }
    // Sorting a's thetas past b's: one transposition per pair (x in a, y in b) with x > y.
    int swaps = 0;
    for (std::uint64_t t = b.theta_; t != 0; t &= t - 1) {
        const int y = std::countr_zero(t);
        swaps += std::popcount(a.theta_ & ~((bit(y) << 1) - 1));
    }
    out.theta_ = a.theta_ | b.theta_;
    out.u_.assign(std::max(a.u_.size(), b.u_.size()), 0);
    for (std::size_t i = 0; i < a.u_.size(); ++i) {
        out.u_[i] += a.u_[i];
    }
    for (std::size_t i = 0; i < b.u_.size(); ++i) {
        out.u_[i] += b.u_[i];
    }
    out.trim();
    return parity_sign(swaps);
}

std::string Monomial::render() const {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < u_.size(); ++i) {
        if (u_[i] == 0) {
            continue;
        }
        std::string s = "u" + std::to_string(i + 1);
        if (u_[i] != 1) {
            s += "^" + (u_[i] < 0 ? "(" + std::to_string(u_[i]) + ")" : std::to_string(u_[i]));
        }
        parts.push_back(std::move(s));
    }
    for (std::uint64_t t = theta_; t != 0; t &= t - 1) {
        const int s = std::countr_zero(t);
        parts.push_back(s == 0 ? std::string("theta") : "theta" + std::to_string(s));
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) {
            out += "*";
        }
        out += parts[i];
    }
    return out;
}

Rational weight(const Monomial& m) {
    Rational w = 0;
    for (int s = 1; s <= m.u_size(); ++s) {
        w += Rational(m.u_exponent(s) * (s + 2), 2);
    }
    for (std::uint64_t t = m.theta_mask(); t != 0; t &= t - 1) {
        const int s = std::countr_zero(t);
        w += Rational(s - 1, 2);
    }
    w.canonicalize();
    return w;
}

std::strong_ordering lex_compare(const Monomial& m, const Monomial& n) {
    const int top = std::max(m.max_jet(), n.max_jet());
    for (int k = top; k >= 1; --k) {
        if (auto c = m.has_theta(k) <=> n.has_theta(k); c != 0) {
            return c;
        }
        if (auto c = m.u_exponent(k) <=> n.u_exponent(k); c != 0) {
            return c;
        }
    }
    return m.has_theta(0) <=> n.has_theta(0);
}

// ---- ThetaPoly -------------------------------------------------------------

ThetaPoly::ThetaPoly(const CoeffExpr& c) {
    if (!c.is_zero()) {
        terms_.emplace(Monomial{}, c);
    }
    extended_ = c.has_extension_atoms();
}

ThetaPoly ThetaPoly::term(const Monomial& m, const CoeffExpr& c) {
    ThetaPoly p;
    p.add_term(m, c);
    p.extended_ = m.has_negative_exponent() || c.has_extension_atoms();
    return p;
}

ThetaPoly ThetaPoly::u(int s) {
    if (s == 0) {
        return ThetaPoly(CoeffExpr::u());
    }
    return term(Monomial::u(s));
}

ThetaPoly ThetaPoly::theta(int s) {
    return term(Monomial::theta(s));
}

ThetaPoly ThetaPoly::log_u1() {
    return term(Monomial{}, CoeffExpr::log_u1());
}

ThetaPoly ThetaPoly::u1_power(int exponent) {
    ThetaPoly p = term(Monomial::u(1, exponent));
    p.extended_ = true;
    return p;
}

bool ThetaPoly::has_extension_atoms() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) {
        return t.first.has_negative_exponent() || t.second.has_extension_atoms();
    });
}

ThetaPoly ThetaPoly::to_plain() const {
    if (has_extension_atoms()) {
        throw Error("extension atoms persist");
    }
    ThetaPoly p = *this;
    p.extended_ = false;
    return p;
}

int ThetaPoly::max_jet() const noexcept {
    int j = 0;
    for (const auto& [m, c] : terms_) {
        j = std::max(j, m.max_jet());
    }
    return j;
}

int ThetaPoly::lambda_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
        d = std::max(d, c.lambda_degree());
    }
    return d;
}

ThetaPoly ThetaPoly::lambda_coefficient(int k) const {
    return map_coefficients([k](const CoeffExpr& c) { return c.lambda_coefficient(k); });
}

ThetaPoly ThetaPoly::component(int d, int p) const {
    return filter([d, p](const Monomial& m) { return m.degree() == d && m.super_degree() == p; });
}

std::vector<std::pair<int, int>> ThetaPoly::bidegrees() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [m, c] : terms_) {
        out.emplace_back(m.degree(), m.super_degree());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ThetaPoly ThetaPoly::filter(const std::function<bool(const Monomial&)>& keep) const {
    ThetaPoly out;
    out.extended_ = extended_;
    for (const auto& [m, c] : terms_) {
        if (keep(m)) {
            out.terms_.emplace(m, c);
        }
    }
    return out;
}

ThetaPoly ThetaPoly::map_coefficients(const std::function<CoeffExpr(const CoeffExpr&)>& f) const {
    ThetaPoly out;
    out.extended_ = extended_;
    for (const auto& [m, c] : terms_) {
        out.add_term(m, f(c));
    }
    return out;
}

CoeffExpr ThetaPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? CoeffExpr() : it->second;
}

void ThetaPoly::add_term(const Monomial& m, const CoeffExpr& c) {
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

ThetaPoly& ThetaPoly::operator+=(const ThetaPoly& other) {
    for (const auto& [m, c] : other.terms_) {
        add_term(m, c);
    }
    extended_ = extended_ || other.extended_;
    return *this;
}

ThetaPoly& ThetaPoly::operator-=(const ThetaPoly& other) {
    for (const auto& [m, c] : other.terms_) {
        add_term(m, -c);
    }
    extended_ = extended_ || other.extended_;
    return *this;
}

ThetaPoly& ThetaPoly::operator*=(const CoeffExpr& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second = it->second * c;
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
    extended_ = extended_ || c.has_extension_atoms();
    return *this;
}

ThetaPoly operator*(const ThetaPoly& a, const ThetaPoly& b) {
    ThetaPoly out;
    out.extended_ = a.extended_ || b.extended_;
    Monomial m;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            const int sign = multiply(ma, mb, m);
            if (sign == 0) {
                continue;
            }
            CoeffExpr c = ca * cb;
            if (sign < 0) {
                c = -c;
            }
            out.add_term(m, c);
        }
    }
    return out;
}

ThetaPoly ThetaPoly::operator-() const {
    ThetaPoly out = *this;
    for (auto& [m, c] : out.terms_) {
        c = -c;
    }
    return out;
}

std::string ThetaPoly::render() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string coeff = c.render();
        const std::string mono = m.render();
        bool negative = false;
        if (c.is_monomial() && coeff.front() == '-') {
            negative = true;
            coeff.erase(0, 1);
        }
        if (!first) {
            os << (negative ? " - " : " + ");
        } else if (negative) {
            os << "-";
        }
        first = false;
        if (mono.empty()) {
            os << (c.is_monomial() ? coeff : "(" + coeff + ")");
        } else if (coeff == "1") {
            os << mono;
        } else {
            os << (c.is_monomial() ? coeff : "(" + coeff + ")") << "*" << mono;
        }
    }
    return os.str();
}

// ---- derivations -----------------------------------------------------------

ThetaPoly partial_u(const ThetaPoly& a, int s) {
    ThetaPoly out;
    out.mark_extended(a.extended());
    for (const auto& [m, c] : a.terms()) {
        if (s == 0) {
            out.add_term(m, ddu(c));
            continue;
        }
        const int e = m.u_exponent(s);
        if (e != 0) {
            Monomial nm = m;
            nm.set_u_exponent(s, e - 1);
            out.add_term(nm, c * Rational(e));
        }
        if (s == 1) {
            // d/du1 of log(u1)^k = k log(u1)^(k-1) / u1
            for (const auto& [key, value] : c.terms()) {
                if (key.log_u1 == 0) {
                    continue;
                }
                CoeffMonomial nk = key;
                nk.log_u1 -= 1;
                Monomial nm = m;
                nm.set_u_exponent(1, e - 1);
                out.add_term(nm, CoeffExpr::from_term(nk, value * key.log_u1));
            }
        }
    }
    return out;
}

ThetaPoly partial_theta(const ThetaPoly& a, int s) {
    ThetaPoly out;
    out.mark_extended(a.extended());
    for (const auto& [m, c] : a.terms()) {
        if (!m.has_theta(s)) {
            continue;
        }
        Monomial nm = m;
        nm.set_theta(s, false);
        const int sign = parity_sign(thetas_below(m.theta_mask(), s));
        out.add_term(nm, sign < 0 ? -c : c);
    }
    return out;
}

ThetaPoly total_derivative(const ThetaPoly& a) {
    ThetaPoly out;
    out.mark_extended(a.extended());
    for (const auto& [m, c] : a.terms()) {
        // coefficient: d/du^0 times u^1
        if (CoeffExpr dc = ddu(c); !dc.is_zero()) {
            Monomial nm = m;
            nm.set_u_exponent(1, m.u_exponent(1) + 1);
            out.add_term(nm, dc);
        }
        for (int s = 1; s <= m.u_size(); ++s) {
            const int e = m.u_exponent(s);
            if (e == 0) {
                continue;
            }
            Monomial nm = m;
            nm.set_u_exponent(s, e - 1);
            nm.set_u_exponent(s + 1, nm.u_exponent(s + 1) + 1);
            out.add_term(nm, c * Rational(e));
        }
        for (std::uint64_t t = m.theta_mask(); t != 0; t &= t - 1) {
            const int s = std::countr_zero(t);
            if (m.has_theta(s + 1)) {
                continue;
            }
            check_theta_index(s + 1);
            // remove theta^s from the left, then put theta^{s+1} back on the left
            const int sign = parity_sign(thetas_below(m.theta_mask(), s)) *
                             parity_sign(thetas_below(m.theta_mask() & ~bit(s), s + 1));
            Monomial nm = m;
            nm.set_theta(s, false);
            nm.set_theta(s + 1, true);
            out.add_term(nm, sign < 0 ? -c : c);
        }
        // d log(u1) = u2 / u1
        for (const auto& [key, value] : c.terms()) {
            if (key.log_u1 == 0) {
                continue;
            }
            CoeffMonomial nk = key;
            nk.log_u1 -= 1;
            Monomial nm = m;
            nm.set_u_exponent(1, m.u_exponent(1) - 1);
            nm.set_u_exponent(2, nm.u_exponent(2) + 1);
            out.add_term(nm, CoeffExpr::from_term(nk, value * key.log_u1));
        }
    }
    return out;
}

ThetaPoly total_derivative(const ThetaPoly& a, int times) {
    ThetaPoly out = a;
    for (int i = 0; i < times; ++i) {
        out = total_derivative(out);
    }
    return out;
}

ThetaPoly subst_lambda(const ThetaPoly& a, const CoeffExpr& value) {
    return a.map_coefficients([&value](const CoeffExpr& c) { return subst_lambda(c, value); });
}

} // namespace thetaform
