#include "usc/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace usc::dynamics {

namespace {

Dense psd_sqrt(const Dense& rho)
{
    Eigen::SelfAdjointEigenSolver<Dense> es(rho);
    Eigen::VectorXd s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * s.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace

double fidelity(const QState& x, const QState& y)
{
    if (x.space() != y.space()) throw Error(ErrorKind::ShapeError, "fidelity between different spaces");
    double f = 0.0;
    if (x.is_ket() && y.is_ket()) {
        f = std::norm(x.vector().dot(y.vector()));
    } else if (x.is_ket()) {
        f = x.vector().dot(y.matrix() * x.vector()).real();
    } else if (y.is_ket()) {
        f = y.vector().dot(x.matrix() * y.vector()).real();
    } else {
        // Uhlmann: (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
        const Dense s = psd_sqrt(x.matrix());
        Dense m = s * y.matrix() * s;
        m = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<Dense> es(m, Eigen::EigenvaluesOnly);
        const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
        f = tr * tr;
    }
    return std::clamp(f, 0.0, 1.0);
}

} // namespace usc::dynamics
