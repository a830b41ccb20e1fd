#include "thetaform/coeff.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "thetaform/error.hpp"

namespace thetaform {

std::string to_string(const Rational& r) {
    return r.get_str();
}

namespace {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    return std::gcd(a, b);
}

// Multiplies `key` by F^(order) ^ delta, keeping atoms sorted and nonzero.
void multiply_atom(CoeffMonomial& key, const std::string& name, int order, int delta) {
    auto it = std::lower_bound(key.functions.begin(), key.functions.end(), std::make_pair(name, order),
                               [](const FunctionAtom& a, const std::pair<std::string, int>& b) {
                                   return std::tie(a.name, a.order) < std::tie(b.first, b.second);
                               });
    if (it != key.functions.end() && it->name == name && it->order == order) {
        it->power += delta;
        if (it->power == 0) {
            key.functions.erase(it);
        }
    } else if (delta != 0) {
        key.functions.insert(it, FunctionAtom{name, order, delta});
    }
}

int atom_power(const CoeffMonomial& key, const std::string& name, int order) {
    for (const auto& a : key.functions) {
        if (a.name == name && a.order == order) {
            return a.power;
        }
    }
    return 0;
}

// Product of two monomials; returns the rational factor produced by radicals.
Rational multiply_keys(const CoeffMonomial& a, const CoeffMonomial& b, CoeffMonomial& out) {
    out.lambda = a.lambda + b.lambda;
    out.u = a.u + b.u;
    out.log_u1 = a.log_u1 + b.log_u1;
    out.functions.clear();
    out.functions.reserve(a.functions.size() + b.functions.size());
    auto ia = a.functions.begin();
    auto ib = b.functions.begin();
    while (ia != a.functions.end() || ib != b.functions.end()) {
        if (ib == b.functions.end() ||
            (ia != a.functions.end() && std::tie(ia->name, ia->order) < std::tie(ib->name, ib->order))) {
            out.functions.push_back(*ia++);
        } else if (ia == a.functions.end() ||
                   std::tie(ib->name, ib->order) < std::tie(ia->name, ia->order)) {
            out.functions.push_back(*ib++);
        } else {
            const int p = ia->power + ib->power;
            if (p != 0) {
                out.functions.push_back(FunctionAtom{ia->name, ia->order, p});
            }
            ++ia;
            ++ib;
        }
    }
    const std::uint64_t g = gcd_u64(a.radicand, b.radicand);
    out.radicand = (a.radicand / g) * (b.radicand / g);
    return Rational(static_cast<unsigned long>(g));
}

// Splits n = s^2 * m with m squarefree.
void squarefree_split(const mpz_class& n, mpz_class& square_root, mpz_class& squarefree) {
    square_root = 1;
    squarefree = 1;
    mpz_class rest = n;
    for (mpz_class p = 2; p * p <= rest; ++p) {
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) {
            square_root *= p;
        }
        if (e % 2 == 1) {
            squarefree *= p;
        }
    }
    squarefree *= rest;
}

std::string render_atom(const FunctionAtom& a) {
    std::string s;
    if (a.order == 0) {
        s = a.name + "(u)";
    } else if (a.order <= 2) {
        s = a.name + std::string(static_cast<std::size_t>(a.order), '\'') + "(u)";
    } else {
        s = "D[" + a.name + "," + std::to_string(a.order) + "](u)";
    }
    if (a.power != 1) {
        s += "^" + (a.power < 0 ? "(" + std::to_string(a.power) + ")" : std::to_string(a.power));
    }
    return s;
}

std::string power_suffix(int p) {
    if (p == 1) {
        return "";
    }
    return "^" + (p < 0 ? "(" + std::to_string(p) + ")" : std::to_string(p));
}

} // namespace

CoeffExpr::CoeffExpr(int value) : CoeffExpr(Rational(value)) {}

CoeffExpr::CoeffExpr(const Rational& value) {
    if (value != 0) {
        terms_.emplace(CoeffMonomial{}, value).first->second.canonicalize();
    }
}

CoeffExpr CoeffExpr::u() {
    CoeffMonomial k;
    k.u = 1;
    return from_term(std::move(k), 1);
}

CoeffExpr CoeffExpr::lambda() {
    CoeffMonomial k;
    k.lambda = 1;
    return from_term(std::move(k), 1);
}

CoeffExpr CoeffExpr::function(const std::string& name, int order) {
    CoeffMonomial k;
    k.functions.push_back(FunctionAtom{name, order, 1});
    return from_term(std::move(k), 1);
}

CoeffExpr CoeffExpr::sqrt(const Rational& value) {
    if (value <= 0) {
        throw Error("sqrt of a non-positive rational");
    }
    Rational v = value;
    v.canonicalize();
    // sqrt(p/q) = sqrt(p*q)/q
    const mpz_class n = v.get_num() * v.get_den();
    mpz_class s;
    mpz_class m;
    squarefree_split(n, s, m);
    if (!m.fits_ulong_p()) {
        throw Error("radicand too large");
    }
    CoeffMonomial k;
    k.radicand = m.get_ui();
    return from_term(std::move(k), Rational(s, v.get_den()));
}

CoeffExpr CoeffExpr::log_u1() {
    CoeffMonomial k;
    k.log_u1 = 1;
    return from_term(std::move(k), 1);
}

CoeffExpr CoeffExpr::from_term(CoeffMonomial key, Rational value) {
    CoeffExpr e;
    value.canonicalize();
    if (value != 0) {
        e.terms_.emplace(std::move(key), std::move(value));
    }
    return e;
}

bool CoeffExpr::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational CoeffExpr::as_rational() const {
    if (!is_rational()) {
        throw Error("expression is not a rational number: " + render());
    }
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int CoeffExpr::lambda_degree() const {
    int d = 0;
    for (const auto& [k, v] : terms_) {
        d = std::max(d, k.lambda);
    }
    return d;
}

CoeffExpr CoeffExpr::lambda_coefficient(int k) const {
    CoeffExpr out;
    for (const auto& [key, v] : terms_) {
        if (key.lambda == k) {
            CoeffMonomial nk = key;
            nk.lambda = 0;
            out.terms_.emplace(std::move(nk), v);
        }
    }
    return out;
}

bool CoeffExpr::has_extension_atoms() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.log_u1 != 0; });
}

bool CoeffExpr::is_numeric() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
        return t.first.lambda == 0 && t.first.u == 0 && t.first.log_u1 == 0 && t.first.functions.empty();
    });
}

bool CoeffExpr::depends_on(const std::string& function_name) const {
    for (const auto& [k, v] : terms_) {
        for (const auto& a : k.functions) {
            if (a.name == function_name) {
                return true;
            }
        }
    }
    return false;
}

void CoeffExpr::add_term(const CoeffMonomial& key, const Rational& value) {
    if (value == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(key, value);
    if (inserted) {
        it->second.canonicalize();
    } else {
        it->second += value;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

CoeffExpr& CoeffExpr::operator+=(const CoeffExpr& other) {
    for (const auto& [k, v] : other.terms_) {
        add_term(k, v);
    }
    return *this;
}

CoeffExpr& CoeffExpr::operator-=(const CoeffExpr& other) {
    for (const auto& [k, v] : other.terms_) {
        add_term(k, -v);
    }
    return *this;
}

CoeffExpr& CoeffExpr::operator*=(const CoeffExpr& other) {
    *this = *this * other;
    return *this;
}

CoeffExpr& CoeffExpr::operator*=(const Rational& factor) {
    if (factor == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) {
        v *= factor;
        v.canonicalize();
    }
    return *this;
}

CoeffExpr operator*(const CoeffExpr& a, const CoeffExpr& b) {
    CoeffExpr out;
    CoeffMonomial key;
    for (const auto& [ka, va] : a.terms_) {
        for (const auto& [kb, vb] : b.terms_) {
            const Rational radical_factor = multiply_keys(ka, kb, key);
            out.add_term(key, va * vb * radical_factor);
        }
    }
    return out;
}

CoeffExpr CoeffExpr::operator-() const {
    CoeffExpr out = *this;
    for (auto& [k, v] : out.terms_) {
        v = -v;
    }
    return out;
}

CoeffExpr CoeffExpr::pow(int exponent) const {
    if (exponent >= 0) {
        CoeffExpr result(1);
        CoeffExpr base = *this;
        int n = exponent;
        while (n > 0) {
            if (n & 1) {
                result = result * base;
            }
            n >>= 1;
            if (n > 0) {
                base = base * base;
            }
        }
        return result;
    }
    return CoeffExpr(1).divided_by(pow(-exponent));
}

CoeffExpr CoeffExpr::divided_by(const CoeffExpr& divisor) const {
    if (!divisor.is_monomial()) {
        throw Error("division by a non-monomial expression: " + divisor.render());
    }
    const auto& [k, v] = *divisor.terms_.begin();
    if (k.lambda != 0 || k.log_u1 != 0) {
        throw Error("division by an expression containing lambda or log(u1)");
    }
    CoeffMonomial inv;
    inv.u = -k.u;
    for (const auto& a : k.functions) {
        inv.functions.push_back(FunctionAtom{a.name, a.order, -a.power});
    }
    // 1/sqrt(m) = sqrt(m)/m
    inv.radicand = k.radicand;
    Rational factor = 1 / (v * Rational(static_cast<unsigned long>(k.radicand)));
    return *this * from_term(std::move(inv), factor);
}

std::string CoeffExpr::render() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    // Highest lambda power first, then the map order.
    std::vector<const TermMap::value_type*> ordered;
    ordered.reserve(terms_.size());
    for (const auto& t : terms_) {
        ordered.push_back(&t);
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](auto* a, auto* b) { return a->first.lambda > b->first.lambda; });
    for (const auto* t : ordered) {
        const auto& [k, v] = *t;
        Rational mag = abs(v);
        const bool negative = v < 0;
        if (first) {
            if (negative) {
                os << "-";
            }
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        std::vector<std::string> factors;
        if (mag != 1 || k.is_one()) {
            factors.push_back(to_string(mag));
        }
        if (k.radicand != 1) {
            factors.push_back("sqrt(" + std::to_string(k.radicand) + ")");
        }
        if (k.lambda != 0) {
            factors.push_back("lambda" + power_suffix(k.lambda));
        }
        if (k.u != 0) {
            factors.push_back("u" + power_suffix(k.u));
        }
        for (const auto& a : k.functions) {
            factors.push_back(render_atom(a));
        }
        if (k.log_u1 != 0) {
            factors.push_back("log(u1)" + power_suffix(k.log_u1));
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) {
                os << "*";
            }
            os << factors[i];
        }
    }
    return os.str();
}

CoeffExpr ddu(const CoeffExpr& e) {
    CoeffExpr out;
    for (const auto& [k, v] : e.terms()) {
        if (k.u != 0) {
            CoeffMonomial nk = k;
            nk.u -= 1;
            out.add_term(nk, v * k.u);
        }
        for (const auto& a : k.functions) {
            CoeffMonomial nk = k;
            multiply_atom(nk, a.name, a.order, -1);
            multiply_atom(nk, a.name, a.order + 1, 1);
            out.add_term(nk, v * a.power);
        }
    }
    return out;
}

CoeffExpr ddlambda(const CoeffExpr& e) {
    CoeffExpr out;
    for (const auto& [k, v] : e.terms()) {
        if (k.lambda > 0) {
            CoeffMonomial nk = k;
            nk.lambda -= 1;
            out.add_term(nk, v * k.lambda);
        }
    }
    return out;
}

CoeffExpr subst_lambda(const CoeffExpr& e, const CoeffExpr& value) {
    if (value.lambda_degree() != 0) {
        throw Error("subst_lambda: replacement must be lambda-free");
    }
    std::vector<CoeffExpr> powers{CoeffExpr(1)};
    CoeffExpr out;
    for (const auto& [k, v] : e.terms()) {
        while (static_cast<int>(powers.size()) <= k.lambda) {
            powers.push_back(powers.back() * value);
        }
        CoeffMonomial nk = k;
        nk.lambda = 0;
        out += CoeffExpr::from_term(nk, v) * powers[static_cast<std::size_t>(k.lambda)];
    }
    return out;
}

CoeffExpr subst_function(const CoeffExpr& e, const std::string& name, const CoeffExpr& value) {
    if (value.lambda_degree() != 0) {
        throw Error("subst_function: replacement must be lambda-free");
    }
    std::vector<CoeffExpr> derivatives{value};
    CoeffExpr out;
    for (const auto& [k, v] : e.terms()) {
        CoeffMonomial rest = k;
        CoeffExpr factor(1);
        for (const auto& a : k.functions) {
            if (a.name != name) {
                continue;
            }
            while (static_cast<int>(derivatives.size()) <= a.order) {
                derivatives.push_back(ddu(derivatives.back()));
            }
            factor = factor * derivatives[static_cast<std::size_t>(a.order)].pow(a.power);
            multiply_atom(rest, a.name, a.order, -a.power);
        }
        out += CoeffExpr::from_term(rest, v) * factor;
    }
    return out;
}

bool integrate_u(const CoeffExpr& integrand, CoeffExpr& antiderivative) {
    CoeffExpr rest = integrand;
    CoeffExpr acc;
    constexpr int max_steps = 10000;
    for (int step = 0; step < max_steps; ++step) {
        if (rest.is_zero()) {
            antiderivative = acc;
            return true;
        }
        // Highest derivative atom present, ordered by (order, name).
        const FunctionAtom* top = nullptr;
        for (const auto& [k, v] : rest.terms()) {
            for (const auto& a : k.functions) {
                if (a.order >= 1 &&
                    (top == nullptr || std::tie(a.order, a.name) > std::tie(top->order, top->name))) {
                    top = &a;
                }
            }
        }
        if (top == nullptr) {
            CoeffExpr w;
            for (const auto& [k, v] : rest.terms()) {
                if (!k.functions.empty() || k.u == -1) {
                    return false;
                }
                CoeffMonomial nk = k;
                nk.u += 1;
                w.add_term(nk, v / (k.u + 1));
            }
            antiderivative = acc + w;
            return true;
        }
        const std::string name = top->name;
        const int order = top->order;
        // An exact integrand is linear in its top atom, with a cofactor that only
        // involves atoms of lower order.
        CoeffExpr w;
        for (const auto& [k, v] : rest.terms()) {
            const int p = atom_power(k, name, order);
            if (p == 0) {
                continue;
            }
            if (p != 1) {
                return false;
            }
            CoeffMonomial nk = k;
            multiply_atom(nk, name, order, -1);
            for (const auto& a : nk.functions) {
                if (a.order >= order) {
                    return false;
                }
            }
            const int q = atom_power(nk, name, order - 1);
            if (q == -1) {
                return false;
            }
            multiply_atom(nk, name, order - 1, 1);
            w.add_term(nk, v / (q + 1));
        }
        acc += w;
        rest -= ddu(w);
    }
    return false;
}

} // namespace thetaform
