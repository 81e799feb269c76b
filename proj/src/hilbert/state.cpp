#include "usc/hilbert.hpp"

#include <cmath>

namespace usc::hilbert {

QState QState::ket(HilbertSpace space, Vec psi)
{
    if (psi.size() != static_cast<Eigen::Index>(space.total())) {
        throw Error(ErrorKind::ShapeError, "ket length does not match Hilbert space");
    }
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw Error(ErrorKind::DomainError, "ket is not normalized");
    }
    QState s(std::move(space), Kind::Ket);
    s.psi_ = std::move(psi);
    return s;
}

QState QState::normalized_ket(HilbertSpace space, Vec psi)
{
    const double n = psi.norm();
    if (n == 0.0) throw Error(ErrorKind::DomainError, "cannot normalize the zero vector");
    return ket(std::move(space), psi / n);
}

QState QState::density(HilbertSpace space, Dense rho)
{
    const auto n = static_cast<Eigen::Index>(space.total());
    if (rho.rows() != n || rho.cols() != n) {
        throw Error(ErrorKind::ShapeError, "density matrix shape does not match Hilbert space");
    }
    if (std::abs(rho.trace() - 1.0) > 1e-10) {
        throw Error(ErrorKind::DomainError, "density matrix trace differs from 1");
    }
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10) throw Error(ErrorKind::DomainError, "density matrix is not hermitian");
    Eigen::SelfAdjointEigenSolver<Dense> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw Error(ErrorKind::PositivityViolationError, "density matrix has a negative eigenvalue");
    }
    QState s(std::move(space), Kind::Density);
    s.rho_ = std::move(rho);
    return s;
}

QState QState::density_unchecked(HilbertSpace space, Dense rho)
{
    const auto n = static_cast<Eigen::Index>(space.total());
    if (rho.rows() != n || rho.cols() != n) {
        throw Error(ErrorKind::ShapeError, "density matrix shape does not match Hilbert space");
    }
    QState s(std::move(space), Kind::Density);
    s.rho_ = std::move(rho);
    return s;
}

QState QState::basis(const HilbertSpace& space, const std::vector<std::size_t>& occupation)
{
    Vec v = Vec::Zero(static_cast<Eigen::Index>(space.total()));
    v(static_cast<Eigen::Index>(space.index(occupation))) = 1.0;
    return ket(space, v);
}

const Vec& QState::vector() const
{
    if (kind_ != Kind::Ket) throw Error(ErrorKind::ShapeError, "state is a density matrix");
    return psi_;
}

const Dense& QState::matrix() const
{
    if (kind_ != Kind::Density) throw Error(ErrorKind::ShapeError, "state is a ket");
    return rho_;
}

Dense QState::density_matrix() const
{
    if (kind_ == Kind::Density) return rho_;
    return psi_ * psi_.adjoint();
}

cplx QState::expect(const Operator& op) const
{
    if (op.space() != space_) throw Error(ErrorKind::ShapeError, "observable lives on a different space");
    if (kind_ == Kind::Ket) return psi_.dot(op.apply(psi_));
    return op.apply(rho_).trace();
}

} // namespace usc::hilbert
