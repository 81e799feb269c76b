#include "usc/squeeze_amp.hpp"

#include <cmath>
#include <sstream>

namespace usc::squeeze_amp {

using hilbert::destroy;
using hilbert::embed;

void SqueezeFrame::validate() const
{
    if (!(r >= 0.0)) throw Error(ErrorKind::DomainError, "squeezing parameter r must be non-negative");
}

void SqueezedBathParams::validate() const
{
    if (!(r_e >= 0.0)) throw Error(ErrorKind::DomainError, "bath squeezing r_e must be non-negative");
    if (kappa < 0.0) throw Error(ErrorKind::DomainError, "decay rate must be non-negative");
}

Operator bogoliubov(std::size_t site, const SqueezeFrame& frame, const Operator& H)
{
    frame.validate();
    const HilbertSpace& sp = H.space();
    if (site >= sp.sites()) throw Error(ErrorKind::ShapeError, "site index out of range");
    if (frame.r == 0.0) return H;
    const Operator S = embed(hilbert::squeeze_op(sp.dim(site), frame.xi()), sp, site);
    return S.adjoint() * H * S;
}

Operator bogoliubov_padded(std::size_t site, const SqueezeFrame& frame,
                           const std::function<Operator(std::size_t)>& build, std::size_t cutoff, std::size_t pad)
{
    frame.validate();
    if (pad < cutoff) throw Error(ErrorKind::ShapeError, "padding must not be smaller than the cutoff");
    const Operator H = build(pad);
    const HilbertSpace& big = H.space();
    if (site >= big.sites() || big.dim(site) != pad) {
        throw Error(ErrorKind::ShapeError, "builder did not return the padded site dimension");
    }
    std::vector<std::size_t> dims = big.dims();
    dims[site] = cutoff;
    const HilbertSpace small(dims, big.labels());

    // Columns of S restricted to the kept levels, tensored with identities.
    const Dense s = hilbert::squeeze_block(pad, frame.xi(), pad);
    std::vector<Eigen::Triplet<cplx>> trip;
    for (std::size_t col = 0; col < small.total(); ++col) {
        std::vector<std::size_t> occ = small.occupation(col);
        const auto n = static_cast<Eigen::Index>(occ[site]);
        for (std::size_t k = 0; k < pad; ++k) {
            const cplx v = s(static_cast<Eigen::Index>(k), n);
            if (v == cplx(0.0, 0.0)) continue;
            occ[site] = k;
            trip.emplace_back(static_cast<Eigen::Index>(big.index(occ)), static_cast<Eigen::Index>(col), v);
        }
    }
    Sparse V(static_cast<Eigen::Index>(big.total()), static_cast<Eigen::Index>(small.total()));
    V.setFromTriplets(trip.begin(), trip.end());
    const Sparse Vd = V.adjoint();
    if (H.is_sparse()) {
        const Sparse out = Vd * H.sparse_ref() * V;
        return Operator(small, out);
    }
    const Dense out = Vd * (H.dense_ref() * V);
    return Operator(small, out);
}

Enhanced enhanced_couplings(CouplingKind kind, double value, double r)
{
    if (!(r >= 0.0)) throw Error(ErrorKind::DomainError, "squeezing parameter r must be non-negative");
    switch (kind) {
    case CouplingKind::Optomech:
        return {value * std::cosh(2.0 * r), value * std::exp(2.0 * r)};
    case CouplingKind::AtomRotating:
        return {value * std::cosh(r), 0.5 * value * std::exp(r)};
    case CouplingKind::AtomCounterRotating:
        return {-value * std::sinh(r), -0.5 * value * std::exp(r)};
    case CouplingKind::Cooperativity: {
        const double c = std::cosh(r);
        return {value * c * c, 0.25 * value * std::exp(2.0 * r)};
    }
    }
    throw Error(ErrorKind::DomainError, "unknown coupling kind");
}

SqueezedOptomech h_squeezed_optomech(double omega_sq, double omega_m, double g0, const SqueezeFrame& frame,
                                     std::size_t n_cav, std::size_t n_mech, SqueezedOptomechForm form,
                                     bool static_force)
{
    frame.validate();
    if (n_cav < 3 || n_mech < 2) throw Error(ErrorKind::InvalidDimension, "squeezed optomechanics needs cutoffs >= (3, 2)");
    const HilbertSpace sp({n_cav, n_mech}, {"a_sq", "b"});
    const Operator a = embed(destroy(n_cav), sp, 0);
    const Operator b = embed(destroy(n_mech), sp, 1);
    const Operator n = a.adjoint() * a;
    const Operator x = b + b.adjoint();
    const cplx ph = std::polar(1.0, frame.theta);

    SqueezedOptomech out;
    out.g_om = g0 * std::cosh(2.0 * frame.r);
    out.g_2ph = g0 * std::sinh(2.0 * frame.r);
    out.rwa_valid = omega_sq >= 10.0 * std::max(std::abs(omega_m), std::abs(out.g_2ph));
    out.hyper_raman_resonant = std::abs(omega_m - 2.0 * omega_sq) <= 0.1 * std::abs(omega_m);

    out.H = omega_sq * n + omega_m * (b.adjoint() * b) - out.g_om * (n * x);
    const Operator a2 = a * a;
    switch (form) {
    case SqueezedOptomechForm::Full:
        out.H += 0.5 * out.g_2ph * ((ph * a2.adjoint() + std::conj(ph) * a2) * x);
        break;
    case SqueezedOptomechForm::HyperRaman: {
        const Operator t = std::conj(ph) * (a2 * b.adjoint());
        out.H += 0.5 * out.g_2ph * (t + t.adjoint());
        break;
    }
    case SqueezedOptomechForm::Rwa:
        break;
    }
    if (static_force) {
        const double s = std::sinh(frame.r);
        out.H += -g0 * s * s * x;
    }
    return out;
}

SqueezedJc h_squeezed_jc(double omega_sq, double Delta_q, double g, const SqueezeFrame& frame, std::size_t cutoff,
                         bool rwa)
{
    frame.validate();
    if (cutoff < 2) throw Error(ErrorKind::InvalidDimension, "cavity cutoff must be at least 2");
    const Operator a = destroy(cutoff);
    const Operator id = hilbert::eye(cutoff);
    const Operator sp = hilbert::sigma_plus();
    SqueezedJc out;
    out.g_rw = g * std::cosh(frame.r);
    out.g_cr = -g * std::sinh(frame.r);
    out.rwa_valid = std::abs(out.g_cr) <= 0.1 * std::abs(omega_sq + Delta_q);

    const Operator rw = kron(sp, a);
    out.H = omega_sq * kron(hilbert::eye(2), a.adjoint() * a) + (Delta_q / 2.0) * kron(hilbert::sigma_z(), id) +
            out.g_rw * (rw + rw.adjoint());
    if (!rwa && frame.r != 0.0) {
        const Operator cr = std::polar(1.0, frame.theta) * kron(sp, a.adjoint());
        out.H += out.g_cr * (cr + cr.adjoint());
    }
    return out;
}

DispersiveShift dispersive_shift(const DispersiveParams& p)
{
    const double lo = p.Delta_q - p.omega_sq;
    const double hi = p.Delta_q + p.omega_sq;
    if (lo == 0.0 || hi == 0.0) throw Error(ErrorKind::DomainError, "dispersive denominator vanishes");
    if (std::abs(lo) < 10.0 * std::abs(p.g) || std::abs(hi) < 10.0 * std::abs(p.g)) {
        std::ostringstream msg;
        msg << "dispersive-invalid: |Delta_q -+ omega_sq| = " << std::abs(lo) << ", " << std::abs(hi)
            << " is below 10 g";
        warn(msg.str());
    }
    const double c = std::cosh(p.r), s = std::sinh(p.r);
    const double g2 = 2.0 * p.g * p.g;
    DispersiveShift out;
    out.chi = g2 / lo * c * c + g2 / hi * s * s;
    if (!p.chi_anh) {
        out.chi_trans = out.chi;
        return out;
    }
    const double an = *p.chi_anh;
    if (an + lo == 0.0 || an + hi == 0.0) throw Error(ErrorKind::DomainError, "transmon denominator vanishes");
    out.chi_trans = g2 / lo * (an / (an + lo)) * c * c + g2 / hi * (an / (an + hi)) * s * s;
    return out;
}

} // namespace usc::squeeze_amp
