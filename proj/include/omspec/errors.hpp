// errors.hpp - exception types shared by the simulator modules

#pragma once

#include <stdexcept>
#include <string>

namespace omspec {

/// Base class for every error raised by the library. `code()` is a short
/// machine-readable tag used by the CLI error report.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class IndexError : public Error {
public:
    explicit IndexError(const std::string& what) : Error("index_out_of_range", what) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

class InvalidParams : public Error {
public:
    explicit InvalidParams(const std::string& what) : Error("invalid_params", what) {}
};

/// Raised when the eigendecomposition of a generator cannot reproduce it.
/// Callers should switch to the quadrature spectrum backend.
class NonDiagonalizable : public Error {
public:
    explicit NonDiagonalizable(const std::string& what) : Error("non_diagonalizable", what) {}
};

class UnsupportedRegime : public Error {
public:
    explicit UnsupportedRegime(const std::string& what) : Error("unsupported_regime", what) {}
};

}  // namespace omspec
