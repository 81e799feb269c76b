#include "usc/schemes.hpp"

#include <cmath>
#include <sstream>

namespace usc::schemes {

using hilbert::destroy;
using hilbert::embed;

Vec FrameMap::to_effective(const Vec& psi, double t) const { return W(t) * psi; }

Vec FrameMap::from_effective(const Vec& psi, double t) const { return W(t).adjoint() * psi; }

void TwoToneParams::validate() const
{
    base.validate();
    const double mismatch = (omega_2 - omega_1) - 2.0 * Omega_1;
    if (std::abs(mismatch) > 1e-12 * std::max({1.0, std::abs(omega_1), std::abs(omega_2)})) {
        std::ostringstream msg;
        msg << "two-tone frame needs omega_2 - omega_1 = 2 Omega_1; off by " << mismatch;
        throw Error(ErrorKind::FrameMismatchError, msg.str());
    }
    const double need = 10.0 * std::max(std::abs(base.g) / 4.0, std::abs(base.omega_q - omega_1));
    if (std::abs(Omega_1) < need) {
        std::ostringstream msg;
        msg << "two-tone RWA: Omega_1 = " << Omega_1 << " is below 10 x max(g/4, |omega_q - omega_1|) = " << need;
        warn(msg.str());
    }
}

TwoTone two_tone_scheme(const TwoToneParams& p, std::size_t cutoff)
{
    p.validate();
    if (cutoff < 2) throw Error(ErrorKind::InvalidDimension, "cavity cutoff must be at least 2");
    const HilbertSpace sp({2, cutoff}, {"q", "a"});
    const Operator a = embed(destroy(cutoff), sp, 1);
    const Operator ad = a.adjoint();
    const Operator sm = embed(hilbert::sigma_minus(), sp, 0);
    const Operator sz = embed(hilbert::sigma_z(), sp, 0);
    const Operator sx = embed(hilbert::sigma_x(), sp, 0);
    const double dc = p.base.omega_cav - p.omega_1;

    TwoTone out;
    out.omega_rot = p.omega_1;
    out.H_lab_frame.static_part = dc * (ad * a) + 0.5 * (p.base.omega_q - p.omega_1) * sz +
                                  p.base.g * (a * sm.adjoint() + ad * sm) + p.Omega_1 * sx;
    const double w21 = p.omega_2 - p.omega_1;
    const double O2 = p.Omega_2;
    out.H_lab_frame.terms.push_back({sm, [O2, w21](double t) { return O2 * std::exp(cplx(0.0, w21 * t)); }});
    out.H_lab_frame.terms.push_back({sm.adjoint(), [O2, w21](double t) { return O2 * std::exp(cplx(0.0, -w21 * t)); }});

    out.omega_eff = dc;
    out.qubit_eff = p.Omega_2;
    out.g_eff = p.base.g / 2.0;
    out.H_eff = dc * (ad * a) - 0.5 * p.Omega_2 * sz + out.g_eff * ((a + ad) * sx);

    const double O1 = p.Omega_1;
    const std::size_t n = cutoff;
    out.frame.description = "interaction picture of Omega_1 sigma_x in the frame rotating at omega_1";
    out.frame.W = [O1, n](double t) {
        Dense r(2, 2);
        const double c = std::cos(O1 * t), s = std::sin(O1 * t);
        r << c, cplx(0.0, s), cplx(0.0, s), c;
        return hilbert::kron(Operator(HilbertSpace::single(2), r), hilbert::eye(n)).dense();
    };
    return out;
}

} // namespace usc::schemes
