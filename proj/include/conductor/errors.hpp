#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace conductor {

enum class ErrorCode {
    RankDeficient,
    RankMismatch,
    NotCommutative,
    NotAssociative,
    BadIdentity,
    InfiniteIndex,
    NotAnIdeal,
    ClosureViolation,
    QuotientTooLarge,
    NotSquarefree,
    DegenerateD,
    NotPrime,
    NotMaximal,
    FactorBoundExceeded,
    CrossCheckMismatch,
    RadicalRequired,
    InvalidArgument,
    ParseError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure at a byte offset into the source text.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : Error(ErrorCode::ParseError, "at offset " + std::to_string(offset) + ": " + what),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace conductor
