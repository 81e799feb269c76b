#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace usc {

using cplx = std::complex<double>;
using Dense = Eigen::MatrixXcd;
using Sparse = Eigen::SparseMatrix<cplx>;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorKind {
    InvalidDimension,
    ShapeError,
    DomainError,
    BistabilityError,
    InstabilityError,
    AmplificationDomainError,
    DegenerateManifoldError,
    ResolventSingularError,
    NotRepresentableError,
    FrameMismatchError,
    TruncationError,
    StiffnessError,
    PositivityViolationError,
    NonuniqueSteadyStateError,
    NotBracketedError,
    ConvergenceError,
};

std::string_view to_string(ErrorKind kind);

// Physics errors map to CLI exit code 3, convergence problems to 4.
bool is_convergence_kind(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Truncation-safety and validity advisories. They never abort a computation.
using WarningHandler = std::function<void(std::string_view)>;
void set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

} // namespace usc
