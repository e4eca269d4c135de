#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace lchsft {

/// Malformed or inconsistent input data (exit code 2 at the command line).
class InputError : public std::runtime_error {
public:
    InputError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code))
    {
    }
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Structural failure of a chain complex: bad shape, degree, or d^2 != 0.
class ComplexError : public InputError {
public:
    ComplexError(std::string code, const std::string& message, std::optional<int> degree)
        : InputError(std::move(code), message), degree_(degree)
    {
    }
    std::optional<int> degree() const { return degree_; }

private:
    std::optional<int> degree_;
};

/// A text-format error with a 1-based position.
class ParseError : public InputError {
public:
    ParseError(int line, int column, const std::string& message)
        : InputError("parse", "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column)
    {
    }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// A computation whose mathematical precondition does not hold.
class MathError : public std::runtime_error {
public:
    MathError(std::string code, const std::string& message) : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace lchsft
