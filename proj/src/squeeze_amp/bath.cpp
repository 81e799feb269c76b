#include "usc/squeeze_amp.hpp"

#include <cmath>

namespace usc::squeeze_amp {

BathCoefficients squeezed_bath_coeffs(const SqueezeFrame& frame, const SqueezedBathParams& bath)
{
    frame.validate();
    bath.validate();
    const double c = std::cosh(frame.r), s = std::sinh(frame.r);
    const double ce = std::cosh(bath.r_e), se = std::sinh(bath.r_e);
    const double dth = bath.theta_e - frame.theta;
    BathCoefficients out;
    // N_sq = c^2 se^2 + s^2 ce^2 + 2 c s ce se cos(dth), written as a modulus
    // so that it is non-negative and vanishes exactly at cancellation.
    out.N_sq = std::norm(c * se + std::polar(1.0, dth) * s * ce);
    out.M_sq = std::polar(1.0, -frame.theta) * (s * ce + std::polar(1.0, -dth) * c * se) *
               (c * ce + std::polar(1.0, dth) * se * s);
    return out;
}

LindbladModel squeezed_master_equation(const SqueezeFrame& frame, const SqueezedBathParams& bath, const Operator& H_sq,
                                       std::size_t site, std::vector<Channel> extra)
{
    const BathCoefficients k = squeezed_bath_coeffs(frame, bath);
    const HilbertSpace& sp = H_sq.space();
    if (site >= sp.sites()) throw Error(ErrorKind::ShapeError, "site index out of range");
    const Operator a = hilbert::embed(hilbert::destroy(sp.dim(site)), sp, site);
    const Operator ad = a.adjoint();

    LindbladModel model;
    model.H = H_sq;
    const double kappa = bath.kappa;
    if (kappa > 0.0) {
        model.channels.push_back({a, kappa * (k.N_sq + 1.0), dynamics::ChannelKind::Standard, "squeezed-mode decay"});
        if (k.N_sq != 0.0) {
            model.channels.push_back({ad, kappa * k.N_sq, dynamics::ChannelKind::Standard, "squeezing thermal noise"});
        }
        if (k.M_sq != cplx(0.0, 0.0)) {
            model.channels.push_back({a, -kappa * k.M_sq, dynamics::ChannelKind::TwoPhoton, "two-photon noise"});
            model.channels.push_back(
                {ad, -kappa * std::conj(k.M_sq), dynamics::ChannelKind::TwoPhoton, "two-photon noise (conjugate)"});
        }
    }
    for (auto& c : extra) model.channels.push_back(std::move(c));
    model.validate();
    return model;
}

} // namespace usc::squeeze_amp
