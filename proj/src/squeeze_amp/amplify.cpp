#include "usc/squeeze_amp.hpp"

#include <cmath>

namespace usc::squeeze_amp {

cplx displacement_amplification(cplx alpha, double r, DisplacementMode mode, double theta_2ph)
{
    if (!(r >= 0.0)) throw Error(ErrorKind::DomainError, "squeezing parameter r must be non-negative");
    if (mode == DisplacementMode::PhaseInsensitive) return std::cosh(r) * alpha;
    const double phi = alpha == cplx(0.0, 0.0) ? 0.0 : std::arg(alpha);
    return (std::cosh(r) + std::polar(std::sinh(r), theta_2ph - 2.0 * phi)) * alpha;
}

Dense split_displacement(std::size_t dim, cplx alpha, double r, std::size_t pad)
{
    if (pad < dim) throw Error(ErrorKind::ShapeError, "padding must not be smaller than the block");
    const Dense Sp = hilbert::squeeze_block(pad, cplx(r, 0.0), pad);
    const Dense Sm = hilbert::squeeze_block(pad, cplx(-r, 0.0), pad);
    const Dense D = hilbert::displace_block(pad, alpha / 2.0, pad);
    const Dense U = Sm.adjoint() * D * Sm * Sp.adjoint() * D * Sp;
    const auto n = static_cast<Eigen::Index>(dim);
    return U.topLeftCorner(n, n);
}

TrotterAmplification trotterized_hamiltonian_amplification(const Operator& H_int, std::size_t site, double r,
                                                           std::size_t N_steps, double t, std::size_t probe_levels)
{
    if (N_steps < 1) throw Error(ErrorKind::DomainError, "need at least one Trotter step");
    if (!(r >= 0.0)) throw Error(ErrorKind::DomainError, "squeezing parameter r must be non-negative");
    H_int.require_hermitian("interaction Hamiltonian");
    const HilbertSpace& sp = H_int.space();
    if (site >= sp.sites()) throw Error(ErrorKind::ShapeError, "site index out of range");

    const std::size_t d = sp.dim(site);
    const Dense Sp = hilbert::embed(hilbert::squeeze_op(d, cplx(r, 0.0)), sp, site).dense();
    const Dense Sm = hilbert::embed(hilbert::squeeze_op(d, cplx(-r, 0.0)), sp, site).dense();
    const Dense H = H_int.dense();
    const double steps = static_cast<double>(N_steps);
    const Dense U0 = hilbert::expm_hermitian(H, cplx(0.0, -t / (2.0 * steps)));
    const Dense step = Sm.adjoint() * U0 * Sm * Sp.adjoint() * U0 * Sp;

    Dense U = Dense::Identity(H.rows(), H.cols());
    for (std::size_t k = 0; k < N_steps; ++k) U = step * U;
    const Dense T = hilbert::expm_hermitian(H, cplx(0.0, -std::cosh(r) * t));

    TrotterAmplification out;
    double err = 0.0;
    for (Eigen::Index col = 0; col < H.cols(); ++col) {
        if (probe_levels > 0 && sp.occupation(static_cast<std::size_t>(col))[site] >= probe_levels) continue;
        err = std::max(err, (U.col(col) - T.col(col)).cwiseAbs().maxCoeff());
    }
    out.error = err;
    out.U_protocol = Operator(sp, U);
    out.U_target = Operator(sp, T);
    return out;
}

} // namespace usc::squeeze_amp
