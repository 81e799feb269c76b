#include "usc/models.hpp"

#include <cmath>
#include <numeric>

namespace usc::models {

using hilbert::destroy;
using hilbert::embed;
using hilbert::kron;

namespace {

HilbertSpace qubits_and_cavity(std::size_t N, std::size_t cutoff)
{
    if (N < 1) throw Error(ErrorKind::DomainError, "need at least one qubit");
    if (cutoff < 2) throw Error(ErrorKind::InvalidDimension, "cavity cutoff must be at least 2");
    std::vector<std::size_t> dims(N, 2);
    dims.push_back(cutoff);
    return HilbertSpace(dims);
}

} // namespace

Operator h_dicke(double omega_cav, double omega_q, double g, std::size_t N, std::size_t cutoff, DickeGauge gauge)
{
    const HilbertSpace sp = qubits_and_cavity(N, cutoff);
    const Operator a = embed(destroy(cutoff), sp, N);
    const Operator ad = a.adjoint();
    Operator Sx = Operator::zero(sp);
    Operator Sz = Operator::zero(sp);
    for (std::size_t j = 0; j < N; ++j) {
        Sx += 0.5 * embed(hilbert::sigma_x(), sp, j);
        Sz += 0.5 * embed(hilbert::sigma_z(), sp, j);
    }
    Operator H = omega_cav * (ad * a) + omega_q * Sz;
    if (gauge == DickeGauge::Bare) {
        H += 2.0 * g * ((a + ad) * Sx);
    } else {
        const double eta = g / omega_cav;
        H += cplx(0.0, 2.0 * g) * ((ad - a) * Sx) + 4.0 * eta * g * (Sx * Sx);
    }
    return H;
}

Operator h_tavis_cummings(double omega_cav, double omega_q, double g, std::size_t N, std::size_t cutoff)
{
    const HilbertSpace sp = qubits_and_cavity(N, cutoff);
    const Operator a = embed(destroy(cutoff), sp, N);
    Operator H = omega_cav * (a.adjoint() * a);
    for (std::size_t j = 0; j < N; ++j) {
        const Operator sm = embed(hilbert::sigma_minus(), sp, j);
        H += (omega_q / 2.0) * embed(hilbert::sigma_z(), sp, j) + g * (a * sm.adjoint() + a.adjoint() * sm);
    }
    return H;
}

CollectiveSpin collective_spin(std::size_t N)
{
    if (N < 1) throw Error(ErrorKind::DomainError, "need at least one spin");
    const auto d = static_cast<Eigen::Index>(N + 1);
    const double S = static_cast<double>(N) / 2.0;
    Dense sz = Dense::Zero(d, d), sp = Dense::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const double m = static_cast<double>(k) - S;
        sz(k, k) = m;
        if (k + 1 < d) sp(k + 1, k) = std::sqrt(S * (S + 1.0) - m * (m + 1.0));
    }
    const HilbertSpace space = HilbertSpace::single(N + 1);
    CollectiveSpin out{Operator(space, sz), Operator(space, sp), Operator(space, Dense(sp.adjoint()))};
    return out;
}

Operator h_tavis_cummings_collective(double omega_cav, double omega_q, double g, std::size_t N, std::size_t cutoff)
{
    const CollectiveSpin s = collective_spin(N);
    const Operator a = destroy(cutoff);
    const Operator idc = hilbert::eye(cutoff);
    const Operator ids = Operator::identity(s.Sz.space());
    return omega_cav * kron(ids, a.adjoint() * a) + omega_q * kron(s.Sz, idc) +
           g * (kron(s.Sp, a) + kron(s.Sm, a.adjoint()));
}

Operator h_holstein_primakoff(double omega_cav, double omega_q, double g, std::size_t N, std::size_t n_s,
                              std::size_t cutoff)
{
    if (N < 1) throw Error(ErrorKind::DomainError, "need at least one spin");
    const Operator s = destroy(n_s);
    const Operator a = destroy(cutoff);
    const Operator idc = hilbert::eye(cutoff);
    const Operator ids = hilbert::eye(n_s);
    const double half = static_cast<double>(N) / 2.0;
    const double gc = std::sqrt(static_cast<double>(N)) * g;
    return omega_cav * kron(ids, a.adjoint() * a) + omega_q * kron(s.adjoint() * s - half * ids, idc) +
           gc * (kron(s.adjoint(), a) + kron(s, a.adjoint()));
}

void CollectiveParams::validate() const
{
    if (N < 1) throw Error(ErrorKind::DomainError, "need at least one atom");
    if (!per_atom_g.empty() && per_atom_g.size() != N) {
        throw Error(ErrorKind::ShapeError, "per-atom couplings must have length N");
    }
    if (kappa < 0.0 || gamma < 0.0) throw Error(ErrorKind::DomainError, "decay rates must be non-negative");
}

CollectiveMap collective_map(const CollectiveParams& p)
{
    p.validate();
    const double n = static_cast<double>(p.N);
    // g^2 = (1/N) sum_j g_j^2 for inhomogeneous couplings
    const double g2 = p.per_atom_g.empty()
                          ? p.g * p.g
                          : std::inner_product(p.per_atom_g.begin(), p.per_atom_g.end(), p.per_atom_g.begin(), 0.0) / n;
    CollectiveMap out;
    out.g_col = std::sqrt(n * g2);
    if (p.kappa > 0.0 && p.gamma > 0.0) out.C_col = n * g2 / (p.kappa * p.gamma);
    out.hp_valid_excitation = 0.1 * n;
    return out;
}

} // namespace usc::models
