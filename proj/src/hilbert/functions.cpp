#include "usc/hilbert.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace usc::hilbert {

namespace {

// exp(G) for anti-hermitian G, exactly unitary up to rounding.
Dense unitary_from_generator(const Dense& G) { return expm_hermitian(cplx(0.0, 1.0) * G, cplx(0.0, -1.0)); }

// S(xi) only couples Fock states of equal parity. Within one parity sector
// i S^-1 dS is tridiagonal, so after a diagonal phase change it becomes a
// real symmetric tridiagonal matrix with a cheap eigendecomposition.
Dense squeeze_full(std::size_t dim, cplx xi)
{
    const auto n = static_cast<Eigen::Index>(dim);
    Dense S = Dense::Zero(n, n);
    for (Eigen::Index parity = 0; parity < 2; ++parity) {
        const Eigen::Index m = (n - parity + 1) / 2;
        if (m == 0) continue;
        // H = i G with G(k, k+2) = xi* sqrt((k+1)(k+2)) / 2.
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
        Eigen::VectorXd off(std::max<Eigen::Index>(m - 1, 0));
        Vec phase(m);
        phase(0) = 1.0;
        for (Eigen::Index i = 0; i + 1 < m; ++i) {
            const double k = static_cast<double>(parity + 2 * i);
            const cplx e = cplx(0.0, 0.5) * std::conj(xi) * std::sqrt((k + 1.0) * (k + 2.0));
            off(i) = std::abs(e);
            phase(i + 1) = std::conj(e) * phase(i) / off(i);
        }
        Dense u;
        if (m == 1) {
            u = Dense::Identity(1, 1);
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
            es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
            if (es.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceError, "squeeze eigendecomposition failed");
            const Eigen::MatrixXd& V = es.eigenvectors();
            Vec w(m);
            for (Eigen::Index k = 0; k < m; ++k) w(k) = std::exp(cplx(0.0, -es.eigenvalues()(k)));
            const Dense Vc = V.cast<cplx>();
            u = phase.asDiagonal() * (Vc * w.asDiagonal() * Vc.transpose()) * phase.conjugate().asDiagonal();
        }
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) S(parity + 2 * i, parity + 2 * j) = u(i, j);
        }
    }
    return S;
}

Dense displace_full(std::size_t dim, cplx alpha)
{
    const Dense a = destroy(dim).dense();
    return unitary_from_generator(alpha * a.adjoint() - std::conj(alpha) * a);
}

} // namespace

Dense expm_hermitian(const Dense& H, cplx factor)
{
    Eigen::SelfAdjointEigenSolver<Dense> es(H);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::DomainError, "eigendecomposition failed");
    const Dense& V = es.eigenvectors();
    Vec phases(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(factor * es.eigenvalues()(k));
    return V * phases.asDiagonal() * V.adjoint();
}

Dense expm(const Dense& G) { return G.exp(); }

Operator displace(std::size_t dim, cplx alpha)
{
    if (dim < 2) throw Error(ErrorKind::InvalidDimension, "displace needs dim >= 2");
    if (std::norm(alpha) > static_cast<double>(dim) / 4.0) {
        std::ostringstream msg;
        msg << "displace: |alpha|^2 = " << std::norm(alpha) << " exceeds dim/4 = " << dim / 4.0;
        warn(msg.str());
    }
    if (alpha == cplx(0.0, 0.0)) return eye(dim);
    return Operator(HilbertSpace::single(dim), displace_full(dim, alpha));
}

Operator squeeze_op(std::size_t dim, cplx xi)
{
    if (dim < 2) throw Error(ErrorKind::InvalidDimension, "squeeze_op needs dim >= 2");
    const double c = std::cosh(std::abs(xi));
    if (4.0 * c * c > static_cast<double>(dim)) {
        std::ostringstream msg;
        msg << "squeeze_op: 4 cosh^2|xi| = " << 4.0 * c * c << " exceeds dim = " << dim;
        warn(msg.str());
    }
    if (xi == cplx(0.0, 0.0)) return eye(dim);
    return Operator(HilbertSpace::single(dim), squeeze_full(dim, xi));
}

Dense squeeze_block(std::size_t dim, cplx xi, std::size_t pad)
{
    if (pad < dim) throw Error(ErrorKind::ShapeError, "padding must not be smaller than the block");
    const auto n = static_cast<Eigen::Index>(dim);
    return squeeze_full(pad, xi).topLeftCorner(n, n);
}

Dense displace_block(std::size_t dim, cplx alpha, std::size_t pad)
{
    if (pad < dim) throw Error(ErrorKind::ShapeError, "padding must not be smaller than the block");
    const auto n = static_cast<Eigen::Index>(dim);
    return displace_full(pad, alpha).topLeftCorner(n, n);
}

Operator operator_function(const Operator& op, const std::function<cplx(double)>& f)
{
    if (!op.is_hermitian()) {
        throw Error(ErrorKind::DomainError, "operator_function requires a hermitian operator");
    }
    Eigen::SelfAdjointEigenSolver<Dense> es(op.dense());
    if (es.info() != Eigen::Success) throw Error(ErrorKind::DomainError, "eigendecomposition failed");
    const Dense& V = es.eigenvectors();
    Vec fl(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < fl.size(); ++k) fl(k) = f(es.eigenvalues()(k));
    return Operator(op.space(), Dense(V * fl.asDiagonal() * V.adjoint()));
}

} // namespace usc::hilbert
