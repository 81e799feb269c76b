#include "usc/schemes.hpp"

#include <cmath>
#include <sstream>

namespace usc::schemes {

namespace {

// Qubit level (0 = g, 1 = e) carried by chain site n.
std::size_t site_qubit(ParityChain chain, std::size_t n)
{
    const bool even = n % 2 == 0;
    return (chain == ParityChain::C) == even ? 0 : 1;
}

} // namespace

std::size_t parity_chain_site_index(ParityChain chain, std::size_t n, std::size_t cutoff)
{
    if (n >= cutoff) throw Error(ErrorKind::ShapeError, "chain site beyond the cavity cutoff");
    return site_qubit(chain, n) * cutoff + n;
}

Vec parity_chain_propagate(double omega_cav, double omega_q, double g, ParityChain chain, std::size_t N,
                           const Vec& psi0, double t)
{
    if (N < 4) throw Error(ErrorKind::InvalidDimension, "parity chain needs at least 4 sites");
    if (static_cast<std::size_t>(psi0.size()) != N) {
        std::ostringstream msg;
        msg << "parity chain state has " << psi0.size() << " entries, expected " << N;
        throw Error(ErrorKind::ShapeError, msg.str());
    }
    // Site n couples to n+1 through g sqrt(n+1); on-site energy n omega_cav plus the qubit level.
    Eigen::VectorXd diag(static_cast<Eigen::Index>(N));
    Eigen::VectorXd off(static_cast<Eigen::Index>(N - 1));
    for (std::size_t n = 0; n < N; ++n) {
        const double sz = site_qubit(chain, n) == 0 ? -1.0 : 1.0;
        diag(static_cast<Eigen::Index>(n)) = static_cast<double>(n) * omega_cav + 0.5 * omega_q * sz;
        if (n + 1 < N) off(static_cast<Eigen::Index>(n)) = g * std::sqrt(static_cast<double>(n + 1));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceError, "tridiagonal eigensolver failed");

    const Eigen::MatrixXcd V = es.eigenvectors().cast<cplx>();
    Vec phases(static_cast<Eigen::Index>(N));
    for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(cplx(0.0, -es.eigenvalues()(k) * t));
    Vec psi = V * (phases.asDiagonal() * (V.adjoint() * psi0));

    const double edge = psi.tail(3).squaredNorm();
    if (edge > 1e-6) {
        std::ostringstream msg;
        msg << "parity chain population " << edge << " reached the last 3 of " << N << " sites";
        throw Error(ErrorKind::TruncationError, msg.str());
    }
    return psi;
}

} // namespace usc::schemes
