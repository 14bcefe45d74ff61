#pragma once

#include <stdexcept>
#include <string>

namespace microwrap {

/// Base class of every exception thrown by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed complexes, maps or matrices (shape mismatch, d∘d ≠ 0, ...).
class ChainError : public Error {
public:
    using Error::Error;
};

/// Invalid stratified spaces, strata ids or constructible sets.
class SpaceError : public Error {
public:
    using Error::Error;
};

/// Invalid S-modules or module maps (base mismatch, non-commuting squares).
class ModuleError : public Error {
public:
    using Error::Error;
};

/// Invalid interval sheaves, stops, or wraps that do not stabilize.
class WrapError : public Error {
public:
    enum class Kind { invalid_input, unsupported_wrap, unrealizable };

    WrapError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Scenario parsing errors. line/column are 1-based; 0 when not applicable.
class ScenarioError : public Error {
public:
    ScenarioError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(line ? what + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"
                     : what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace microwrap
