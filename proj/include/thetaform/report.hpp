#pragma once

// Named pass/fail checks with rendered residuals, printable as text or JSON.

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace thetaform {

struct Check {
    std::string name;
    bool pass = false;
    /// Rendered residual; "0" for an identity that holds.
    std::string residual = "0";
    std::optional<std::string> witness;
    /// Free-form note (expected values, comparisons, error messages).
    std::string detail;
    double seconds = 0.0;
};

class Report {
public:
    explicit Report(std::string title = {}) : title_(std::move(title)) {}

    [[nodiscard]] const std::string& title() const noexcept { return title_; }
    /// Checks sorted by name.
    [[nodiscard]] const std::vector<Check>& checks() const noexcept { return checks_; }
    [[nodiscard]] std::size_t passed() const;
    [[nodiscard]] std::size_t failed() const { return checks_.size() - passed(); }
    [[nodiscard]] bool all_pass() const { return failed() == 0; }
    [[nodiscard]] double wall_time() const;

    void add(Check check);
    /// Adds every check of `other`, prefixing names with `prefix`.
    void merge(const Report& other, const std::string& prefix = {});

    /// Wall times change between runs, so they are rendered only on request.
    [[nodiscard]] std::string text(bool timings = false) const;
    [[nodiscard]] nlohmann::json json(bool timings = false) const;

private:
    std::string title_;
    std::vector<Check> checks_;
};

/// Runs `body` (returning a Check without timing) and records its wall time.
template <class F>
Check timed(F&& body) {
    const auto start = std::chrono::steady_clock::now();
    Check c = body();
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return c;
}

/// A check that holds iff `residual` renders as "0".
Check residual_check(std::string name, std::string residual, std::string detail = {});

} // namespace thetaform
