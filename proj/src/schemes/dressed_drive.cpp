#include "usc/schemes.hpp"

#include <algorithm>
#include <cmath>

namespace usc::schemes {

using hilbert::destroy;
using hilbert::embed;

SingleDriveDressed single_drive_dressed(const JcParams& p, double Omega, double Delta_a, double Delta_sigma,
                                        std::size_t n_atoms, std::size_t cutoff)
{
    p.validate();
    if (n_atoms < 1) throw Error(ErrorKind::DomainError, "need at least one atom");
    if (cutoff < 2) throw Error(ErrorKind::InvalidDimension, "cavity cutoff must be at least 2");
    SingleDriveDressed out;
    out.qubit = effective::dress_qubit(Omega, Delta_sigma);
    const effective::DressedQubit& q = out.qubit;
    const double c = std::cos(q.theta), s = std::sin(q.theta);

    std::vector<std::size_t> dims(n_atoms, 2);
    dims.push_back(cutoff);
    const HilbertSpace sp(dims);
    const Operator a = embed(destroy(cutoff), sp, n_atoms);
    const Operator ad = a.adjoint();
    out.H_dressed = Delta_a * (ad * a);
    out.H_driven = Delta_a * (ad * a);
    for (std::size_t j = 0; j < n_atoms; ++j) {
        const Operator sm = embed(hilbert::sigma_minus(), sp, j);
        const Operator sz = embed(hilbert::sigma_z(), sp, j);
        const Operator L = q.c_minus * sm + q.c_plus * sm.adjoint() + q.c_z * sz;
        out.H_dressed += q.R * sz + p.g * (L * ad + L.adjoint() * a);
        out.H_driven += Delta_sigma * (sm.adjoint() * sm) + Omega * (sm + sm.adjoint()) + p.g * (sm * ad + sm.adjoint() * a);
    }

    auto add = [&](std::string name, double res, double g_eff) {
        out.resonances.push_back({std::move(name), res, Delta_a - res, g_eff});
    };
    // |+, n> <-> |-, n+1> through s^2 sigma~^- a^dag; |-, n> <-> |+, n+1> through -c^2 sigma~^+ a^dag.
    add("one_photon", 2.0 * q.R, p.g * s * s);
    add("counter_rotating_one_photon", -2.0 * q.R, -p.g * c * c);
    if (n_atoms >= 2) {
        add("two_atoms_one_photon", 4.0 * q.R,
            std::abs(effective::example_III_two_atoms_one_photon(p.g, q.R, q.theta, 0).g_eff));
    }
    std::stable_sort(out.resonances.begin(), out.resonances.end(),
                     [](const DressedProcess& x, const DressedProcess& y) { return std::abs(x.detuning) < std::abs(y.detuning); });
    return out;
}

} // namespace usc::schemes
