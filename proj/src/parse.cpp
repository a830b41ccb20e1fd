#include "thetaform/parse.hpp"

#include <cctype>

#include "thetaform/error.hpp"

namespace thetaform {

namespace {

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

    EpsPoly parse_all() {
        EpsPoly value = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return value;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    EpsPoly expr() {
        EpsPoly value = term();
        for (;;) {
            if (accept('+')) {
                value += term();
            } else if (accept('-')) {
                value -= term();
            } else {
                return value;
            }
        }
    }

    EpsPoly term() {
        EpsPoly value = unary();
        for (;;) {
            if (accept('*')) {
                value = value * unary();
            } else {
                const std::size_t at = pos_;
                if (accept('/')) {
                    value = value * inverse(unary(), at);
                } else {
                    return value;
                }
            }
        }
    }

    EpsPoly unary() {
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    EpsPoly power() {
        EpsPoly base = primary();
        const std::size_t at = pos_;
        if (!accept('^')) {
            return base;
        }
        int exponent = 0;
        if (accept('(')) {
            const bool negative = accept('-');
            exponent = integer();
            if (negative) {
                exponent = -exponent;
            }
            expect(')');
        } else {
            const bool negative = accept('-');
            exponent = integer();
            if (negative) {
                exponent = -exponent;
            }
        }
        if (exponent < 0) {
            base = inverse(base, at);
            exponent = -exponent;
        }
        EpsPoly result = ThetaPoly(1);
        for (int i = 0; i < exponent; ++i) {
            result = result * base;
        }
        return result;
    }

    int integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            throw ParseError("expected integer", pos_);
        }
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    std::string identifier() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    EpsPoly inverse(const EpsPoly& divisor, std::size_t at) {
        if (divisor.terms().size() != 1 || divisor.terms().begin()->second.size() != 1) {
            throw ParseError("division by a non-monomial expression", at);
        }
        const auto& [eps_power, poly] = *divisor.terms().begin();
        const auto& [mono, coeff] = *poly.terms().begin();
        if (!coeff.is_monomial()) {
            throw ParseError("division by a non-monomial expression", at);
        }
        if (mono.super_degree() != 0) {
            throw ParseError("division by an odd variable", at);
        }
        Monomial inv;
        for (int s = 1; s <= mono.u_size(); ++s) {
            if (mono.u_exponent(s) == 0) {
                continue;
            }
            if (s != 1 || !options_.allow_extended) {
                throw ParseError("division by a jet variable requires extended mode", at);
            }
            inv.set_u_exponent(s, -mono.u_exponent(s));
        }
        CoeffExpr c;
        try {
            c = CoeffExpr(1).divided_by(coeff);
        } catch (const Error& e) {
            throw ParseError(e.what(), at);
        }
        EpsPoly out;
        ThetaPoly p = ThetaPoly::term(inv, c);
        out.add(-eps_power, p);
        return out;
    }

    EpsPoly number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        mpz_class n(std::string(text_.substr(start, pos_ - start)));
        return ThetaPoly(CoeffExpr(Rational(n)));
    }

    // Parses "(<variable>)".
    void expect_variable_argument() {
        expect('(');
        const std::size_t at = pos_;
        const std::string arg = identifier();
        if (arg != options_.variable) {
            throw ParseError("function argument must be '" + options_.variable + "'", at);
        }
        expect(')');
    }

    EpsPoly function_atom(const std::string& name, int order, std::size_t at) {
        if (options_.functions.count(name) == 0) {
            throw UnknownSymbolError(name, at);
        }
        expect_variable_argument();
        return ThetaPoly(CoeffExpr::function(name, order));
    }

    // Jet index for identifiers such as u1, u12, ux, uxx; -1 if not a jet name.
    int jet_index(const std::string& id) const {
        const std::string& v = options_.variable;
        if (id.size() <= v.size() || id.compare(0, v.size(), v) != 0) {
            return -1;
        }
        const std::string rest = id.substr(v.size());
        bool digits = true;
        bool xs = true;
        for (char ch : rest) {
            digits = digits && std::isdigit(static_cast<unsigned char>(ch));
            xs = xs && ch == 'x';
        }
        if (digits) {
            return std::stoi(rest);
        }
        if (xs) {
            return static_cast<int>(rest.size());
        }
        return -1;
    }

    EpsPoly primary() {
        skip_ws();
        if (pos_ >= text_.size()) {
            throw ParseError("unexpected end of input", pos_);
        }
        const char ch = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            return number();
        }
        if (ch == '(') {
            ++pos_;
            EpsPoly value = expr();
            expect(')');
            return value;
        }
        const std::size_t at = pos_;
        const std::string id = identifier();
        if (id.empty()) {
            throw ParseError(std::string("unexpected '") + ch + "'", at);
        }
        if (id == options_.variable) {
            return ThetaPoly(CoeffExpr::u());
        }
        if (id == "lambda") {
            return ThetaPoly(CoeffExpr::lambda());
        }
        if (id == "eps") {
            if (!options_.allow_eps) {
                throw UnknownSymbolError(id, at);
            }
            return EpsPoly::eps();
        }
        if (id == "sqrt") {
            expect('(');
            const std::size_t arg_at = pos_;
            EpsPoly arg = expr();
            expect(')');
            if (arg.terms().size() > 1 || (arg.terms().size() == 1 && arg.terms().begin()->first != 0)) {
                throw ParseError("sqrt argument must be a positive rational", arg_at);
            }
            const ThetaPoly p = arg.at(0);
            const CoeffExpr c = p.coefficient(Monomial{});
            if (p.size() > 1 || (p.size() == 1 && c.is_zero()) || !c.is_rational() || c.as_rational() <= 0) {
                throw ParseError("sqrt argument must be a positive rational", arg_at);
            }
            return ThetaPoly(CoeffExpr::sqrt(c.as_rational()));
        }
        if (id == "log") {
            if (!options_.allow_extended) {
                throw UnknownSymbolError(id, at);
            }
            expect('(');
            const std::size_t arg_at = pos_;
            if (jet_index(identifier()) != 1) {
                throw ParseError("log is only defined on the first jet variable", arg_at);
            }
            expect(')');
            return ThetaPoly::log_u1();
        }
        if (id == "D") {
            expect('[');
            const std::size_t name_at = pos_;
            const std::string name = identifier();
            expect(',');
            const int order = integer();
            expect(']');
            return function_atom(name, order, name_at);
        }
        if (id.rfind("theta", 0) == 0) {
            if (!options_.allow_jets) {
                throw UnknownSymbolError(id, at);
            }
            const std::string rest = id.substr(5);
            if (rest.empty()) {
                return ThetaPoly::theta(0);
            }
            for (char d : rest) {
                if (!std::isdigit(static_cast<unsigned char>(d))) {
                    throw UnknownSymbolError(id, at);
                }
            }
            return ThetaPoly::theta(std::stoi(rest));
        }
        if (const int s = jet_index(id); s >= 0) {
            if (!options_.allow_jets) {
                throw UnknownSymbolError(id, at);
            }
            return ThetaPoly::u(s);
        }
        // F(u), F'(u), F''(u), ...
        skip_ws();
        int order = 0;
        while (pos_ < text_.size() && text_[pos_] == '\'') {
            ++order;
            ++pos_;
        }
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            return function_atom(id, order, at);
        }
        throw UnknownSymbolError(id, at);
    }

    std::string_view text_;
    const ParseOptions& options_;
    std::size_t pos_ = 0;
};

} // namespace

EpsPoly parse_density(std::string_view text, ParseOptions options) {
    Parser parser(text, options);
    EpsPoly value = parser.parse_all();
    if (options.allow_extended) {
        EpsPoly marked;
        for (const auto& [k, p] : value.terms()) {
            ThetaPoly q = p;
            marked.add(k, q.mark_extended());
        }
        return marked;
    }
    return value;
}

CoeffExpr parse(std::string_view text, const ParseOptions& options) {
    ParseOptions scalar = options;
    scalar.allow_jets = false;
    scalar.allow_eps = false;
    const EpsPoly value = Parser(text, scalar).parse_all();
    if (value.is_zero()) {
        return CoeffExpr();
    }
    const ThetaPoly p = value.at(0);
    if (value.terms().size() != 1 || p.size() != 1 || !p.terms().begin()->first.is_one()) {
        throw ParseError("expected a scalar expression", 0);
    }
    return p.terms().begin()->second;
}

} // namespace thetaform
