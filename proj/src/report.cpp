#include "thetaform/report.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace thetaform {

std::size_t Report::passed() const {
    return static_cast<std::size_t>(std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; }));
}

double Report::wall_time() const {
    return std::accumulate(checks_.begin(), checks_.end(), 0.0,
                           [](double acc, const Check& c) { return acc + c.seconds; });
}

void Report::add(Check check) {
    auto pos = std::upper_bound(checks_.begin(), checks_.end(), check.name,
                                [](const std::string& name, const Check& c) { return name < c.name; });
    checks_.insert(pos, std::move(check));
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (Check c : other.checks_) {
        c.name = prefix + c.name;
        add(std::move(c));
    }
}

namespace {

std::string seconds_text(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f s", s);
    return buf;
}

} // namespace

std::string Report::text(bool timings) const {
    std::string out;
    if (!title_.empty()) {
        out += "# " + title_ + "\n";
    }
    for (const Check& c : checks_) {
        out += c.pass ? "PASS  " : "FAIL  ";
        out += c.name;
        if (timings) {
            out += "  (" + seconds_text(c.seconds) + ")";
        }
        out += "\n      residual: " + c.residual + "\n";
        if (c.witness) {
            out += "      witness: " + *c.witness + "\n";
        }
        if (!c.detail.empty()) {
            out += "      " + c.detail + "\n";
        }
    }
    out += std::to_string(passed()) + " passed, " + std::to_string(failed()) + " failed";
    if (timings) {
        out += ", " + seconds_text(wall_time());
    }
    out += "\n";
    return out;
}

nlohmann::json Report::json(bool timings) const {
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& c : checks_) {
        nlohmann::json j = {{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"residual", c.residual}};
        if (c.witness) {
            j["witness"] = *c.witness;
        }
        if (!c.detail.empty()) {
            j["detail"] = c.detail;
        }
        if (timings) {
            j["wall_time"] = c.seconds;
        }
        checks.push_back(std::move(j));
    }
    nlohmann::json out = {{"title", title_}, {"checks", std::move(checks)}, {"passed", passed()}, {"failed", failed()}};
    if (timings) {
        out["wall_time"] = wall_time();
    }
    return out;
}

Check residual_check(std::string name, std::string residual, std::string detail) {
    Check c;
    c.name = std::move(name);
    c.pass = residual == "0";
    c.residual = std::move(residual);
    c.detail = std::move(detail);
    return c;
}

} // namespace thetaform
