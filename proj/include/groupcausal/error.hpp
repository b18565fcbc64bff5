#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace groupcausal {

enum class ErrorCode {
    DuplicateLabel,
    DuplicateEdge,
    SelfEdge,
    UnknownEndpoint,
    UnknownNode,
    InvalidWalk,
    CyclicInput,
    BudgetExceeded,
    NotAPartition,
    NodeSetMismatch,
    UnknownGroup,
    SelfParent,
    NoSuchMacroEdge,
    EmptyWindow,
    NotMixing,
    GroupSetMismatch,
    InvalidArgument,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every library failure is reported through this exception; `code()` names the contract that was violated.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace groupcausal
