#include "thetaform/bracket_io.hpp"

#include <cctype>
#include <fstream>

#include "thetaform/error.hpp"
#include "thetaform/parse.hpp"

namespace thetaform {

namespace {

using nlohmann::json;

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what(), e.byte);
    }
}

LatticePoly lp_add(LatticePoly a, const LatticePoly& b, const Rational& sign = 1) {
    for (const auto& [m, r] : b) {
        Rational& slot = a[m];
        slot += sign * r;
        if (slot == 0) {
            a.erase(m);
        }
    }
    return a;
}

LatticePoly lp_mul(const LatticePoly& a, const LatticePoly& b) {
    LatticePoly out;
    for (const auto& [ma, ra] : a) {
        for (const auto& [mb, rb] : b) {
            LatticeMonomial m = ma;
            for (const auto& [pt, e] : mb) {
                m[pt] += e;
            }
            out = lp_add(std::move(out), LatticePoly{{m, ra * rb}});
        }
    }
    return out;
}

LatticePoly lp_const(const Rational& r) {
    if (r == 0) {
        return {};
    }
    return {{LatticeMonomial{}, r}};
}

class LatticeParser {
public:
    LatticeParser(std::string_view text, std::string variable) : text_(text), var_(std::move(variable)) {}

    LatticePoly run() {
        LatticePoly p = expr();
        skip();
        if (pos_ != text_.size()) {
            fail("unexpected input");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("lattice coefficient: " + what + " at position " + std::to_string(pos_), pos_);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool eat(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    long integer() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected an integer");
        }
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

    std::string identifier() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    LatticePoly expr() {
        LatticePoly p = term();
        for (;;) {
            if (eat('+')) {
                p = lp_add(std::move(p), term());
            } else if (eat('-')) {
                p = lp_add(std::move(p), term(), -1);
            } else {
                return p;
            }
        }
    }

    LatticePoly term() {
        LatticePoly p = unary();
        for (;;) {
            if (eat('*')) {
                p = lp_mul(p, unary());
            } else if (eat('/')) {
                const long d = integer();
                if (d == 0) {
                    fail("division by zero");
                }
                p = lp_mul(p, lp_const(Rational(1, d)));
            } else {
                return p;
            }
        }
    }

    LatticePoly unary() {
        if (eat('-')) {
            return lp_mul(lp_const(-1), unary());
        }
        if (eat('+')) {
            return unary();
        }
        LatticePoly base = primary();
        if (eat('^')) {
            const long n = integer();
            LatticePoly out = lp_const(1);
            for (long i = 0; i < n; ++i) {
                out = lp_mul(out, base);
            }
            return out;
        }
        return base;
    }

    LatticePoly primary() {
        skip();
        if (eat('(')) {
            LatticePoly p = expr();
            expect(')');
            return p;
        }
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            return lp_const(Rational(integer()));
        }
        const std::size_t at = pos_;
        const std::string id = identifier();
        if (id != var_) {
            pos_ = at;
            fail("unknown symbol '" + id + "'");
        }
        expect('(');
        const std::string point = identifier();
        if (point != "x" && point != "y") {
            fail("point must be x or y");
        }
        int offset = 0;
        skip();
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            const int sign = text_[pos_] == '-' ? -1 : 1;
            ++pos_;
            skip();
            long k = 1;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                k = integer();
                expect('*');
            }
            if (identifier() != "eps") {
                fail("expected eps");
            }
            offset = sign * static_cast<int>(k);
        }
        expect(')');
        LatticeMonomial m;
        m[LatticePoint{point == "y", offset}] = 1;
        return {{m, Rational(1)}};
    }

    std::string_view text_;
    std::string var_;
    std::size_t pos_ = 0;
};

} // namespace

DeltaBracket bracket_from_json(const json& doc, const std::set<std::string>& functions) {
    DeltaBracket out;
    out.coordinate = doc.value("coordinate", std::string("u"));
    if (doc.contains("order")) {
        out.order = doc.at("order").get<int>();
    }
    ParseOptions opts;
    opts.variable = out.coordinate;
    opts.functions = functions;
    opts.allow_jets = true;
    for (const auto& t : doc.at("terms")) {
        const int e = t.at("eps").get<int>();
        const int k = t.at("der").get<int>();
        const EpsPoly a = parse_density(t.at("coeff").get<std::string>(), opts);
        for (const auto& [e2, p] : a.terms()) {
            for (const auto& [m, c] : p.terms()) {
                if (m.super_degree() != 0 || c.lambda_degree() != 0) {
                    throw Error("bracket coefficients must be even and lambda-free");
                }
            }
            out.op.add(e + e2, k, p);
        }
    }
    if (!out.is_skew()) {
        throw Error("skewness violation in bracket file");
    }
    return out;
}

json bracket_to_json(const DeltaBracket& b) {
    json doc;
    doc["coordinate"] = b.coordinate;
    if (b.order) {
        doc["order"] = *b.order;
    }
    json terms = json::array();
    for (const auto& [key, a] : b.op.terms()) {
        terms.push_back({{"eps", key.first}, {"der", key.second}, {"coeff", rename_coordinate(a.render(), b.coordinate)}});
    }
    doc["terms"] = terms;
    return doc;
}

DeltaBracket load_bracket(const std::filesystem::path& path, const std::set<std::string>& functions) {
    return bracket_from_json(read_json(path), functions);
}

MiuraTransform miura_from_json(const json& doc, const std::set<std::string>& functions) {
    MiuraTransform out;
    out.source = doc.value("source", std::string("w"));
    out.target = doc.value("target", std::string("u"));
    ParseOptions opts;
    opts.variable = out.target;
    opts.functions = functions;
    opts.allow_jets = true;
    opts.allow_eps = true;
    out.F = parse_density(doc.at("F").get<std::string>(), opts);
    return out;
}

MiuraTransform load_miura(const std::filesystem::path& path, const std::set<std::string>& functions) {
    return miura_from_json(read_json(path), functions);
}

LatticePoly parse_lattice_coeff(std::string_view text, const std::string& variable) {
    return LatticeParser(text, variable).run();
}

std::string render_lattice_coeff(const LatticePoly& p, const std::string& variable) {
    if (p.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& [m, r] : p) {
        std::string factors;
        for (const auto& [pt, e] : m) {
            std::string arg = pt.at_y ? "y" : "x";
            if (pt.offset != 0) {
                arg += (pt.offset > 0 ? "+" : "-");
                if (std::abs(pt.offset) != 1) {
                    arg += std::to_string(std::abs(pt.offset)) + "*";
                }
                arg += "eps";
            }
            factors += (factors.empty() ? "" : "*") + variable + "(" + arg + ")" + (e != 1 ? "^" + std::to_string(e) : "");
        }
        Rational mag = abs(r);
        std::string coeff = to_string(mag);
        std::string piece;
        if (factors.empty()) {
            piece = coeff;
        } else if (mag.get_den() == 1) {
            piece = (mag == 1 ? "" : coeff + "*") + factors;
        } else {
            piece = (mag.get_num() == 1 ? "" : mag.get_num().get_str() + "*") + factors + "/" + mag.get_den().get_str();
        }
        if (out.empty()) {
            out = (r < 0 ? "-" : "") + piece;
        } else {
            out += (r < 0 ? " - " : " + ") + piece;
        }
    }
    return out;
}

LatticeBracket lattice_from_json(const json& doc) {
    LatticeBracket out;
    out.coordinate = doc.value("coordinate", std::string("u"));
    for (const auto& t : doc.at("shift_terms")) {
        LatticeTerm term;
        term.shift = t.at("shift").get<int>();
        term.eps_power = t.value("eps_power", 0);
        term.coeff = parse_lattice_coeff(t.at("coeff").get<std::string>(), out.coordinate);
        out.terms.push_back(std::move(term));
    }
    return out;
}

json lattice_to_json(const LatticeBracket& b) {
    json doc;
    doc["coordinate"] = b.coordinate;
    json terms = json::array();
    for (const auto& t : b.terms) {
        terms.push_back({{"shift", t.shift}, {"eps_power", t.eps_power}, {"coeff", render_lattice_coeff(t.coeff, b.coordinate)}});
    }
    doc["shift_terms"] = terms;
    return doc;
}

LatticeBracket load_lattice(const std::filesystem::path& path) {
    return lattice_from_json(read_json(path));
}

} // namespace thetaform
