#include "solsurf/error.hpp"

namespace solsurf {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::PoleOrOverflow: return "PoleOrOverflow";
    case ErrorKind::UnboundParameter: return "UnboundParameter";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::PoleInParameter: return "PoleInParameter";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::StencilOutOfDomain: return "StencilOutOfDomain";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::PoleClearanceViolated: return "PoleClearanceViolated";
    case ErrorKind::IncompatibleSystem: return "IncompatibleSystem";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::LambdaZero: return "LambdaZero";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::NonIntegrableForm: return "NonIntegrableForm";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message, std::optional<std::size_t> offset)
{
    std::string out(to_string(kind));
    if (offset)
        out += " at offset " + std::to_string(*offset);
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> offset)
    : std::runtime_error(decorate(kind, message, offset)), kind_(kind), offset_(offset)
{
}

}  // namespace solsurf
