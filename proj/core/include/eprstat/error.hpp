#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eprstat {

/// Machine-readable failure categories. Every error the library raises
/// carries one of these so callers (and the CLI exit-code mapping) can
/// branch without parsing messages.
enum class ErrorCode {
    InvalidArgument,
    EmptyData,
    AllSessionsTooShort,
    InvalidDistribution,
    OneSidedZeroFlux,
    ZeroVariance,
    LengthMismatch,
    DegenerateX,
    ParseError,
    StateOutOfRange,
    MixedEncodings,
    NonMonotoneRounds,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Data or configuration error. Maps to CLI exit code 1.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised by the strict zero-flux policy; names the offending state pair.
class OneSidedZeroFluxError : public Error {
public:
    OneSidedZeroFluxError(std::size_t i, std::size_t j);

    std::size_t from() const noexcept { return i_; }
    std::size_t to() const noexcept { return j_; }

private:
    std::size_t i_;
    std::size_t j_;
};

/// Data error tied to a line of an input file.
class ParseError : public Error {
public:
    ParseError(ErrorCode code, std::size_t line, const std::string& what);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Broken internal invariant (a bug, not bad input). Maps to exit code 2.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace eprstat
