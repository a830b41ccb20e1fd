#pragma once

// Finite Laurent series in the dispersion parameter eps.

#include <map>
#include <string>

#include "thetaform/algebra.hpp"

namespace thetaform {

class EpsPoly {
public:
    using TermMap = std::map<int, ThetaPoly>;

    EpsPoly() = default;
    EpsPoly(const ThetaPoly& p) { add(0, p); } // NOLINT(google-explicit-constructor)

    static EpsPoly eps(int power = 1) {
        EpsPoly e;
        e.add(power, ThetaPoly(1));
        return e;
    }

    [[nodiscard]] const TermMap& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] ThetaPoly at(int power) const {
        auto it = terms_.find(power);
        return it == terms_.end() ? ThetaPoly() : it->second;
    }
    [[nodiscard]] int min_power() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    [[nodiscard]] int max_power() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    void add(int power, const ThetaPoly& p) {
        if (p.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(power, p);
        if (!inserted) {
            it->second += p;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    /// Drops all powers above `order`.
    [[nodiscard]] EpsPoly truncated(int order) const {
        EpsPoly out;
        for (const auto& [k, p] : terms_) {
            if (k <= order) {
                out.terms_.emplace(k, p);
            }
        }
        return out;
    }

    EpsPoly& operator+=(const EpsPoly& o) {
        for (const auto& [k, p] : o.terms_) {
            add(k, p);
        }
        return *this;
    }
    EpsPoly& operator-=(const EpsPoly& o) {
        for (const auto& [k, p] : o.terms_) {
            add(k, -p);
        }
        return *this;
    }
    friend EpsPoly operator+(EpsPoly a, const EpsPoly& b) { return a += b; }
    friend EpsPoly operator-(EpsPoly a, const EpsPoly& b) { return a -= b; }
    friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
        EpsPoly out;
        for (const auto& [ka, pa] : a.terms_) {
            for (const auto& [kb, pb] : b.terms_) {
                out.add(ka + kb, pa * pb);
            }
        }
        return out;
    }
    EpsPoly operator-() const {
        EpsPoly out;
        for (const auto& [k, p] : terms_) {
            out.terms_.emplace(k, -p);
        }
        return out;
    }
    friend bool operator==(const EpsPoly& a, const EpsPoly& b) { return a.terms_ == b.terms_; }

    [[nodiscard]] std::string render() const {
        if (terms_.empty()) {
            return "0";
        }
        std::string out;
        for (const auto& [k, p] : terms_) {
            if (!out.empty()) {
                out += " + ";
            }
            const std::string body = p.render();
            if (k == 0) {
                out += terms_.size() == 1 ? body : "(" + body + ")";
            } else {
                out += "eps" + (k == 1 ? std::string() : "^" + std::to_string(k)) + "*(" + body + ")";
            }
        }
        return out;
    }

private:
    TermMap terms_;
};

} // namespace thetaform
