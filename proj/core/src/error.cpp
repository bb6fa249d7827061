#include "eprstat/error.hpp"

namespace eprstat {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyData: return "EmptyData";
    case ErrorCode::AllSessionsTooShort: return "AllSessionsTooShort";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::OneSidedZeroFlux: return "OneSidedZeroFlux";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DegenerateX: return "DegenerateX";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::StateOutOfRange: return "StateOutOfRange";
    case ErrorCode::MixedEncodings: return "MixedEncodings";
    case ErrorCode::NonMonotoneRounds: return "NonMonotoneRounds";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

OneSidedZeroFluxError::OneSidedZeroFluxError(std::size_t i, std::size_t j)
    : Error(ErrorCode::OneSidedZeroFlux,
            "exactly one directed flux is zero between states " + std::to_string(i) +
                " and " + std::to_string(j)),
      i_(i),
      j_(j)
{
}

ParseError::ParseError(ErrorCode code, std::size_t line, const std::string& what)
    : Error(code, "line " + std::to_string(line) + ": " + what), line_(line)
{
}

}  // namespace eprstat
