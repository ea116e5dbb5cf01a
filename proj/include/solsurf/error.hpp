#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace solsurf {

enum class ErrorKind {
    NotHermitian,
    NotUnimodular,
    SyntaxError,
    UnknownFunction,
    UnknownIdentifier,
    PoleOrOverflow,
    UnboundParameter,
    OutOfRange,
    NoConvergence,
    PoleInParameter,
    DomainError,
    StencilOutOfDomain,
    StepUnderflow,
    PoleClearanceViolated,
    IncompatibleSystem,
    QuadratureFailure,
    BranchAmbiguity,
    LambdaZero,
    DegenerateFrame,
    NonIntegrableForm,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above.
/// Parser errors also record the byte offset into the source text.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> offset = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::size_t> offset() const noexcept { return offset_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> offset_;
};

}  // namespace solsurf
