#include "usc/models.hpp"

#include <cmath>
#include <limits>
#include <tuple>

namespace usc::models {

using hilbert::destroy;
using hilbert::embed;
using hilbert::eye;
using hilbert::kron;

void JcParams::validate() const
{
    if (kappa < 0.0 || gamma < 0.0) throw Error(ErrorKind::DomainError, "decay rates must be non-negative");
}

double JcParams::cooperativity() const
{
    if (!(kappa > 0.0) || !(gamma > 0.0)) return std::numeric_limits<double>::infinity();
    return g * g / (kappa * gamma);
}

Operator h_rabi(const JcParams& p, GaugeChoice gauge, std::size_t cutoff, std::optional<double> diamagnetic)
{
    p.validate();
    if (cutoff < 2) throw Error(ErrorKind::InvalidDimension, "cavity cutoff must be at least 2");
    const Operator a = destroy(cutoff);
    const Operator ad = a.adjoint();
    const Operator X = a + ad;
    const Operator id2 = eye(2);
    const Operator free = p.omega_cav * kron(id2, ad * a) + (p.omega_q / 2.0) * kron(hilbert::sigma_z(), eye(cutoff));
    const cplx I(0.0, 1.0);

    switch (gauge) {
    case GaugeChoice::SimpleRabi:
        return free + p.g * kron(hilbert::sigma_x(), X);
    case GaugeChoice::Dipole: {
        const double eta = p.g / p.omega_cav;
        return free + I * p.g * kron(hilbert::sigma_x(), ad - a) +
               p.omega_cav * eta * eta * Operator::identity(free.space());
    }
    case GaugeChoice::CoulombNaive: {
        const double g_cg = p.g * p.omega_q / p.omega_cav;
        const double D = diamagnetic ? *diamagnetic : g_cg * g_cg / p.omega_q;
        return free + g_cg * kron(hilbert::sigma_y(), X) + D * kron(id2, X * X);
    }
    case GaugeChoice::CoulombCorrected: {
        const double eta = p.g / p.omega_cav;
        const Operator arg = 2.0 * eta * X;
        const Operator c = hilbert::operator_function(arg, [](double x) { return cplx(std::cos(x), 0.0); });
        const Operator s = hilbert::operator_function(arg, [](double x) { return cplx(std::sin(x), 0.0); });
        return p.omega_cav * kron(id2, ad * a) +
               (p.omega_q / 2.0) * (kron(hilbert::sigma_z(), c) + kron(hilbert::sigma_y(), s));
    }
    }
    throw Error(ErrorKind::DomainError, "unknown gauge");
}

Operator h_jc(const JcParams& p, std::size_t cutoff)
{
    p.validate();
    if (cutoff < 2) throw Error(ErrorKind::InvalidDimension, "cavity cutoff must be at least 2");
    const Operator a = destroy(cutoff);
    return p.omega_cav * kron(eye(2), a.adjoint() * a) + (p.omega_q / 2.0) * kron(hilbert::sigma_z(), eye(cutoff)) +
           p.g * (kron(hilbert::sigma_plus(), a) + kron(hilbert::sigma_minus(), a.adjoint()));
}

Dpa h_dpa(const DpaParams& p, std::size_t cutoff)
{
    if (p.Omega_2ph < 0.0) throw Error(ErrorKind::DomainError, "parametric amplitude must be non-negative");
    const Operator a = destroy(cutoff);
    const Operator a2 = a * a;
    const cplx ph = std::exp(cplx(0.0, -p.theta_2ph));
    Dpa out;
    out.H = p.Delta_2ph * (a.adjoint() * a) + (p.Omega_2ph / 2.0) * (ph * a2 + std::conj(ph) * a2.adjoint());
    if (p.Delta_2ph > p.Omega_2ph) {
        std::tie(out.r, out.omega_sq) = dpa_frame(p);
    } else {
        out.stable = false;
        out.r = out.omega_sq = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

std::pair<double, double> dpa_frame(const DpaParams& p)
{
    if (!(p.Delta_2ph > p.Omega_2ph) || p.Omega_2ph < 0.0) {
        throw Error(ErrorKind::InstabilityError, "parametric drive needs Delta_2ph > Omega_2ph >= 0");
    }
    const double r = 0.25 * std::log((p.Delta_2ph + p.Omega_2ph) / (p.Delta_2ph - p.Omega_2ph));
    const double w = std::sqrt(p.Delta_2ph * p.Delta_2ph - p.Omega_2ph * p.Omega_2ph);
    return {r, w};
}

void HopfieldParams::validate() const
{
    if (!(omega_a > 0.0) || !(omega_b > 0.0)) throw Error(ErrorKind::DomainError, "Hopfield mode frequencies must be positive");
}

Operator h_hopfield(const HopfieldParams& p, std::size_t n_a, std::size_t n_b)
{
    p.validate();
    const HilbertSpace sp({n_a, n_b}, {"a", "b"});
    const Operator a = embed(destroy(n_a), sp, 0);
    const Operator b = embed(destroy(n_b), sp, 1);
    const Operator ad = a.adjoint(), bd = b.adjoint();
    const cplx I(0.0, 1.0);
    Operator H = p.omega_a * (ad * a) + p.omega_b * (bd * b);
    switch (p.gauge) {
    case HopfieldGauge::Bare:
        H += p.G * ((a + ad) * (b + bd));
        break;
    case HopfieldGauge::Dipole:
        H += I * p.G * ((ad - a) * (b + bd)) + p.G_prime * ((b + bd) * (b + bd));
        break;
    case HopfieldGauge::Coulomb:
        H += -I * p.G * ((bd - b) * (a + ad)) + p.G_prime * ((a + ad) * (a + ad));
        break;
    }
    return H;
}

} // namespace usc::models
