#include "usc/common.hpp"

#include <iostream>
#include <mutex>

namespace usc {

namespace {

std::mutex& handler_mutex()
{
    static std::mutex m;
    return m;
}

WarningHandler& handler_slot()
{
    static WarningHandler h = [](std::string_view msg) {
        std::cerr << "usc warning: " << msg << '\n';
    };
    return h;
}

std::string compose(ErrorKind kind, const std::string& message)
{
    std::string out(to_string(kind));
    out += ": ";
    out += message;
    return out;
}

} // namespace

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::ShapeError: return "shape-error";
    case ErrorKind::DomainError: return "domain-error";
    case ErrorKind::BistabilityError: return "bistability-error";
    case ErrorKind::InstabilityError: return "instability-error";
    case ErrorKind::AmplificationDomainError: return "amplification-domain-error";
    case ErrorKind::DegenerateManifoldError: return "degenerate-manifold-error";
    case ErrorKind::ResolventSingularError: return "resolvent-singular-error";
    case ErrorKind::NotRepresentableError: return "not-representable-error";
    case ErrorKind::FrameMismatchError: return "frame-mismatch-error";
    case ErrorKind::TruncationError: return "truncation-error";
    case ErrorKind::StiffnessError: return "stiffness-error";
    case ErrorKind::PositivityViolationError: return "positivity-violation-error";
    case ErrorKind::NonuniqueSteadyStateError: return "nonunique-steady-state-error";
    case ErrorKind::NotBracketedError: return "not-bracketed-error";
    case ErrorKind::ConvergenceError: return "convergence-error";
    }
    return "unknown-error";
}

bool is_convergence_kind(ErrorKind kind)
{
    return kind == ErrorKind::ConvergenceError || kind == ErrorKind::TruncationError;
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(compose(kind, message)), kind_(kind)
{
}

void set_warning_handler(WarningHandler handler)
{
    std::lock_guard lock(handler_mutex());
    handler_slot() = std::move(handler);
}

void warn(std::string_view message)
{
    std::lock_guard lock(handler_mutex());
    if (handler_slot()) handler_slot()(message);
}

} // namespace usc
