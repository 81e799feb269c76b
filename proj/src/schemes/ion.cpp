#include "usc/schemes.hpp"

#include <cmath>
#include <sstream>

namespace usc::schemes {

using hilbert::destroy;
using hilbert::embed;

void IonDriveParams::validate() const
{
    if (!(omega_mot > 0.0)) throw Error(ErrorKind::DomainError, "motional frequency must be positive");
    if (eta < 0.0 || Omega < 0.0) throw Error(ErrorKind::DomainError, "eta and Omega must be non-negative");
    const double slow = std::max({std::abs(delta_r), std::abs(delta_b), Omega});
    if (slow > 0.1 * omega_mot) {
        std::ostringstream msg;
        msg << "ion drives are not resolved: max(|delta|, Omega) = " << slow << " vs omega_mot = " << omega_mot;
        warn(msg.str());
    }
}

bool lamb_dicke_ok(double eta, double mean_n) { return eta * std::sqrt(std::max(mean_n, 0.0)) < 0.3; }

namespace {

struct IonFreqs {
    double mode, qubit;
};

IonFreqs effective_freqs(const IonDriveParams& p)
{
    const double k = p.order == Sideband::First ? 2.0 : 4.0;
    return {(p.delta_b - p.delta_r) / k, (p.delta_r + p.delta_b) / 2.0};
}

} // namespace

IonEffective ion_bichromatic(const IonDriveParams& p, std::size_t cutoff)
{
    p.validate();
    if (cutoff < 3) throw Error(ErrorKind::InvalidDimension, "motional cutoff must be at least 3");
    const HilbertSpace sp({2, cutoff}, {"q", "mot"});
    const Operator a = embed(destroy(cutoff), sp, 1);
    const Operator ad = a.adjoint();
    const Operator sm = embed(hilbert::sigma_minus(), sp, 0);
    const Operator sz = embed(hilbert::sigma_z(), sp, 0);
    const IonFreqs f = effective_freqs(p);

    IonEffective out;
    out.omega_eff_mode = f.mode;
    out.omega_eff_qubit = f.qubit;
    out.H_eff = f.mode * (ad * a) + 0.5 * f.qubit * sz;
    if (p.order == Sideband::First) {
        out.g_eff = p.eta * p.Omega / 2.0;
        out.H_eff += cplx(0.0, out.g_eff) * ((sm.adjoint() - sm) * (a + ad));
    } else {
        out.g_eff = -p.eta * p.eta * p.Omega / 4.0;
        out.H_eff += out.g_eff * ((sm + sm.adjoint()) * (a * a + ad * ad));
    }
    return out;
}

IonFull ion_full_model(const IonDriveParams& p, std::size_t cutoff)
{
    p.validate();
    if (cutoff < 3) throw Error(ErrorKind::InvalidDimension, "motional cutoff must be at least 3");
    const HilbertSpace sp({2, cutoff}, {"q", "mot"});
    const Operator a1 = destroy(cutoff);
    const Operator kick1 =
        hilbert::operator_function(p.eta * (a1 + a1.adjoint()), [](double x) { return std::exp(cplx(0.0, x)); });
    const Operator op = hilbert::kron(hilbert::sigma_plus(), kick1);
    const Operator a = embed(a1, sp, 1);

    // omega_q - omega_b = -(k nu - delta_b), omega_q - omega_r = k nu + delta_r.
    const double k = p.order == Sideband::First ? 1.0 : 2.0;
    const double wb = -(k * p.omega_mot - p.delta_b);
    const double wr = k * p.omega_mot + p.delta_r;
    const double half = p.Omega / 2.0;
    IonFull out;
    out.H.static_part = p.omega_mot * (a.adjoint() * a);
    out.H.terms.push_back({op, [=](double t) {
                               return half * (std::exp(cplx(0.0, wb * t)) + std::exp(cplx(0.0, wr * t)));
                           }});
    out.H.terms.push_back({op.adjoint(), [=](double t) {
                               return half * (std::exp(cplx(0.0, -wb * t)) + std::exp(cplx(0.0, -wr * t)));
                           }});

    // psi_eff = exp(-i H0_eff t) exp(i nu n t) psi
    const IonFreqs f = effective_freqs(p);
    const double nu = p.omega_mot;
    const std::size_t n = cutoff;
    out.frame.description = "motion to its interaction picture, then back out with the effective free Hamiltonian";
    out.frame.W = [=](double t) {
        const auto d = static_cast<Eigen::Index>(2 * n);
        Dense W = Dense::Zero(d, d);
        for (std::size_t q = 0; q < 2; ++q) {
            const double sz = q == 0 ? -1.0 : 1.0;
            for (std::size_t m = 0; m < n; ++m) {
                const auto i = static_cast<Eigen::Index>(q * n + m);
                const double nm = static_cast<double>(m);
                W(i, i) = std::exp(cplx(0.0, (nu - f.mode) * nm * t - 0.5 * f.qubit * sz * t));
            }
        }
        return W;
    };
    return out;
}

} // namespace usc::schemes
