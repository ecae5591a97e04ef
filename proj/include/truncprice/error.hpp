#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace truncprice {

enum class ErrorCode {
    EmptyDistribution,
    ProbabilityMassError,
    NegativePayout,
    InvalidParameter,
    IndexOutOfRange,
    NoFiniteTruncation,
    ConvergenceFailure,
    ParseError,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::EmptyDistribution: return "EmptyDistribution";
    case ErrorCode::ProbabilityMassError: return "ProbabilityMassError";
    case ErrorCode::NegativePayout: return "NegativePayout";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NoFiniteTruncation: return "NoFiniteTruncation";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace truncprice
