#include "thetaform/functional.hpp"

#include "thetaform/error.hpp"

namespace thetaform {

FunctionalClass::FunctionalClass(ThetaPoly representative) : rep_(std::move(representative)) {
    const auto bd = rep_.bidegrees();
    homogeneous_ = bd.size() <= 1;
    if (!bd.empty()) {
        d_ = bd.begin()->first;
        p_ = bd.begin()->second;
    }
}

FunctionalClass::FunctionalClass(ThetaPoly representative, int d, int p)
    : rep_(std::move(representative)), d_(d), p_(p) {
    for (const auto& [dd, pp] : rep_.bidegrees()) {
        if (dd != d || pp != p) {
            throw Error("bidegree mismatch: representative has (" + std::to_string(dd) + "," +
                        std::to_string(pp) + "), expected (" + std::to_string(d) + "," + std::to_string(p) + ")");
        }
    }
}

bool FunctionalClass::is_zero() const {
    return is_total_derivative(rep_).exact;
}

ExactnessResult class_difference(const FunctionalClass& a, const FunctionalClass& b) {
    return is_total_derivative(a.representative() - b.representative());
}

bool class_equal(const FunctionalClass& a, const FunctionalClass& b) {
    return class_difference(a, b).exact;
}

FunctionalClass induced_d(const EvolutionaryOp& op, const FunctionalClass& a) {
    if (!a.homogeneous()) {
        return FunctionalClass(op(a.representative()));
    }
    return FunctionalClass(op(a.representative()), a.degree() + 1, a.super_degree() + 1);
}

BHCheck verify_closed(const EvolutionaryOp& op, const FunctionalClass& a) {
    const ExactnessResult r = is_total_derivative(op(a.representative()));
    BHCheck out;
    out.holds = r.exact;
    out.witness_1 = r.witness;
    out.detail = r.exact ? "closed" : "not closed: " + r.obstruction;
    return out;
}

BHCheck verify_bh_cocycle(const FunctionalClass& a, const CoeffExpr& g) {
    const ExactnessResult r1 = is_total_derivative(make_D1(g)(a.representative()));
    const ExactnessResult r2 = is_total_derivative(make_D2(g)(a.representative()));
    BHCheck out;
    out.holds = r1.exact && r2.exact;
    out.witness_1 = r1.witness;
    out.witness_2 = r2.witness;
    if (!r1.exact) {
        out.detail = "d1 image nonzero: " + r1.obstruction;
    } else if (!r2.exact) {
        out.detail = "d2 image nonzero: " + r2.obstruction;
    } else {
        out.detail = "cocycle";
    }
    return out;
}

BHCheck verify_bh_coboundary(const FunctionalClass& a, const FunctionalClass& y, const CoeffExpr& g) {
    const bool y_zero = y.representative().is_zero();
    if (!a.representative().is_zero() && !y_zero && a.homogeneous() && y.homogeneous() &&
        (y.degree() != a.degree() - 2 || y.super_degree() != a.super_degree() - 2)) {
        throw Error("bidegree mismatch: witness must sit at (d-2, p-2)");
    }
    const ThetaPoly image = make_D1(g)(make_D2(g)(y.representative()));
    const ExactnessResult r = is_total_derivative(a.representative() - image);
    BHCheck out;
    out.holds = r.exact;
    out.witness_1 = r.witness;
    out.detail = r.exact ? "coboundary" : "a - d1 d2 y not exact: " + r.obstruction;
    return out;
}

} // namespace thetaform
