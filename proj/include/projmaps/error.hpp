#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace projmaps {

enum class ErrorCode {
    DegreeMismatch,
    DimensionMismatch,
    ZeroMap,
    SingularMatrix,
    NotSelfMap,
    WrongDimension,
    SizeLimit,
    IndeterminateResultant,
    BadPrime,
    NotASolution,
    InvalidBlock,
    NotAMorphism,
    InternalContradiction,
    ParseError,
    BudgetExceeded,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroMap: return "ZeroMap";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotSelfMap: return "NotSelfMap";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::IndeterminateResultant: return "IndeterminateResultant";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::InvalidBlock: return "InvalidBlock";
    case ErrorCode::NotAMorphism: return "NotAMorphism";
    case ErrorCode::InternalContradiction: return "InternalContradiction";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace projmaps
