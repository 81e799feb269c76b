#include "usc/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace usc::schemes {

using hilbert::destroy;
using hilbert::embed;
using hilbert::kron;

void RamanParams::validate() const
{
    if (N < 1) throw Error(ErrorKind::DomainError, "Raman scheme needs at least one atom");
    if (Delta_s == 0.0 || Delta_r == 0.0) throw Error(ErrorKind::DomainError, "excited-state detunings must be nonzero");
    const double slow = std::max({std::abs(delta_c), std::abs(Delta_1), std::abs(Omega_s), std::abs(Omega_r),
                                  std::abs(g_s), std::abs(g_r)});
    const double fast = std::min(std::abs(Delta_s), std::abs(Delta_r));
    if (fast < 10.0 * slow) {
        std::ostringstream msg;
        msg << "Raman adiabaticity: min|Delta_{s,r}| = " << fast << " is below 10 x " << slow;
        warn(msg.str());
    }
}

RamanParams raman_symmetric(double g, double Omega, double Delta, double delta_c, double Delta_1, std::size_t N)
{
    RamanParams p;
    p.g_s = p.g_r = g;
    p.Omega_s = p.Omega_r = Omega;
    p.Delta_s = p.Delta_r = Delta;
    p.delta_c = delta_c;
    p.Delta_1 = Delta_1;
    p.N = N;
    return p;
}

RamanEffective raman_effective(const RamanParams& p, std::size_t cutoff)
{
    p.validate();
    if (cutoff < 2) throw Error(ErrorKind::InvalidDimension, "cavity cutoff must be at least 2");
    const double n = static_cast<double>(p.N);
    RamanCouplings c;
    c.lambda_s = -p.g_s * p.Omega_s / (2.0 * p.Delta_s);
    c.lambda_r = -p.g_r * p.Omega_r / (2.0 * p.Delta_r);
    c.Delta_c = p.delta_c - 0.5 * n * (p.g_r * p.g_r / p.Delta_r + p.g_s * p.g_s / p.Delta_s);
    c.Delta_0 = p.Delta_1 + 0.25 * (p.Omega_s * p.Omega_s / p.Delta_s - p.Omega_r * p.Omega_r / p.Delta_r);
    c.chi = p.g_r * p.g_r / p.Delta_r - p.g_s * p.g_s / p.Delta_s;

    const models::CollectiveSpin S = models::collective_spin(p.N);
    const Operator a = destroy(cutoff);
    const Operator ids = Operator::identity(S.Sz.space());
    const Operator idc = hilbert::eye(cutoff);
    const Operator num = kron(ids, a.adjoint() * a);
    const Operator Sz = kron(S.Sz, idc);
    const Operator jc = kron(S.Sp, a);
    const Operator ajc = kron(S.Sp, a.adjoint());

    RamanEffective out;
    out.couplings = c;
    out.H_eff_full = c.Delta_c * num + c.Delta_0 * Sz + c.chi * (num * Sz) + c.lambda_r * (jc + jc.adjoint()) +
                     c.lambda_s * (ajc + ajc.adjoint());
    const double lambda = 0.5 * (c.lambda_s + c.lambda_r);
    if (std::abs(c.lambda_s - c.lambda_r) > 1e-12 * std::max(1.0, std::abs(lambda))) {
        warn("Raman couplings are unbalanced; the Dicke form uses their mean");
    }
    out.H_dicke = c.Delta_c * num + c.Delta_0 * Sz + lambda * kron(S.Sp + S.Sm, a + a.adjoint());
    return out;
}

Operator h_raman_four_level(const RamanParams& p, std::size_t cutoff)
{
    p.validate();
    if (cutoff < 2) throw Error(ErrorKind::InvalidDimension, "cavity cutoff must be at least 2");
    const HilbertSpace sp({4, cutoff}, {"atom", "a"});
    enum { L0 = 0, L1 = 1, Ls = 2, Lr = 3 };
    auto ket = [&](std::size_t to, std::size_t from) { return embed(hilbert::transition(4, to, from), sp, 0); };
    const Operator a = embed(destroy(cutoff), sp, 1);
    const Operator ad = a.adjoint();

    const Operator H0 = p.delta_c * (ad * a) + p.Delta_1 * ket(L1, L1) + p.Delta_r * ket(Lr, Lr) +
                        p.Delta_s * ket(Ls, Ls);
    const Operator drive = 0.5 * p.Omega_s * (ket(L0, Ls) + ket(Ls, L0)) + 0.5 * p.Omega_r * (ket(L1, Lr) + ket(Lr, L1));
    const Operator cav_s = ad * ket(L1, Ls);
    const Operator cav_r = ad * ket(L0, Lr);
    return H0 + drive + p.g_s * (cav_s + cav_s.adjoint()) + p.g_r * (cav_r + cav_r.adjoint());
}

} // namespace usc::schemes
