#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thetaform {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class UnknownSymbolError : public ParseError {
public:
    UnknownSymbolError(const std::string& name, std::size_t position)
        : ParseError("unknown symbol '" + name + "'", position), symbol_(name) {}

    [[nodiscard]] const std::string& symbol() const noexcept { return symbol_; }

private:
    std::string symbol_;
};

} // namespace thetaform
