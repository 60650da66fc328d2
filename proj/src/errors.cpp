#include "conductor/errors.hpp"

namespace conductor {

std::string_view error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotCommutative: return "NotCommutative";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::BadIdentity: return "BadIdentity";
    case ErrorCode::InfiniteIndex: return "InfiniteIndex";
    case ErrorCode::NotAnIdeal: return "NotAnIdeal";
    case ErrorCode::ClosureViolation: return "ClosureViolation";
    case ErrorCode::QuotientTooLarge: return "QuotientTooLarge";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::DegenerateD: return "DegenerateD";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotMaximal: return "NotMaximal";
    case ErrorCode::FactorBoundExceeded: return "FactorBoundExceeded";
    case ErrorCode::CrossCheckMismatch: return "CrossCheckMismatch";
    case ErrorCode::RadicalRequired: return "RadicalRequired";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace conductor
