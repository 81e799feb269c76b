#include "usc/effective.hpp"

#include <cmath>
#include <limits>

namespace usc::effective {

using hilbert::destroy;
using hilbert::embed;

DressedQubit dress_qubit(double Omega, double Delta_sigma)
{
    if (Omega == 0.0 && Delta_sigma == 0.0) throw Error(ErrorKind::DomainError, "undriven resonant qubit has no dressed basis");
    if (!std::isfinite(Omega) || !std::isfinite(Delta_sigma)) throw Error(ErrorKind::DomainError, "drive parameters must be finite");
    DressedQubit q;
    q.Omega = Omega;
    q.Delta_sigma = Delta_sigma;
    q.R = std::hypot(Omega, Delta_sigma / 2.0);
    const double up = Delta_sigma / 2.0 + q.R;
    q.theta = std::atan2(up, Omega);
    q.xi = up == 0.0 ? std::copysign(std::numeric_limits<double>::infinity(), Omega) : Omega / up;

    const double c = std::cos(q.theta), s = std::sin(q.theta);
    q.plus = Vec(2);
    q.plus << c, s;
    q.minus = Vec(2);
    q.minus << s, -c;
    q.c_minus = s * s;
    q.c_plus = -c * c;
    q.c_z = s * c;
    return q;
}

namespace {

// s^2 sm - c^2 sp + s c sz on the dressed qubit at `site`.
Operator rotated_lowering(const HilbertSpace& sp, std::size_t site, double theta)
{
    const double c = std::cos(theta), s = std::sin(theta);
    return s * s * embed(hilbert::sigma_minus(), sp, site) - c * c * embed(hilbert::sigma_plus(), sp, site) +
           s * c * embed(hilbert::sigma_z(), sp, site);
}

void require_model(double R, std::size_t cutoff)
{
    if (cutoff < 2) throw Error(ErrorKind::InvalidDimension, "cavity cutoff must be at least 2");
    if (!(R > 0.0)) throw Error(ErrorKind::DomainError, "Rabi frequency must be positive");
}

} // namespace

Operator h_dressed_two_mode(double g, double R, double theta, double Delta1, double Delta2, std::size_t cutoff)
{
    require_model(R, cutoff);
    const HilbertSpace sp({2, cutoff, cutoff}, {"q", "a1", "a2"});
    const Operator a1 = embed(destroy(cutoff), sp, 1);
    const Operator a2 = embed(destroy(cutoff), sp, 2);
    const Operator L = rotated_lowering(sp, 0, theta);
    const Operator coup = L * (a1 + a2).adjoint();
    return Delta1 * (a1.adjoint() * a1) + Delta2 * (a2.adjoint() * a2) + R * embed(hilbert::sigma_z(), sp, 0) +
           g * (coup + coup.adjoint());
}

Operator h_dressed_two_qubit(double g, double R, double theta, double Delta_a, std::size_t cutoff)
{
    require_model(R, cutoff);
    const HilbertSpace sp({2, 2, cutoff}, {"q1", "q2", "a"});
    const Operator a = embed(destroy(cutoff), sp, 2);
    const Operator coup = (rotated_lowering(sp, 0, theta) + rotated_lowering(sp, 1, theta)) * a.adjoint();
    return Delta_a * (a.adjoint() * a) + R * (embed(hilbert::sigma_z(), sp, 0) + embed(hilbert::sigma_z(), sp, 1)) +
           g * (coup + coup.adjoint());
}

namespace {

Operator driven_qubit(const HilbertSpace& sp, std::size_t site, double Omega, double Delta_sigma)
{
    const Operator sm = embed(hilbert::sigma_minus(), sp, site);
    return Delta_sigma * (sm.adjoint() * sm) + Omega * (sm + sm.adjoint());
}

} // namespace

Operator h_driven_two_mode(double g, double Omega, double Delta_sigma, double Delta1, double Delta2, std::size_t cutoff)
{
    if (cutoff < 2) throw Error(ErrorKind::InvalidDimension, "cavity cutoff must be at least 2");
    const HilbertSpace sp({2, cutoff, cutoff}, {"q", "a1", "a2"});
    const Operator a1 = embed(destroy(cutoff), sp, 1);
    const Operator a2 = embed(destroy(cutoff), sp, 2);
    const Operator coup = embed(hilbert::sigma_minus(), sp, 0) * (a1 + a2).adjoint();
    return driven_qubit(sp, 0, Omega, Delta_sigma) + Delta1 * (a1.adjoint() * a1) + Delta2 * (a2.adjoint() * a2) +
           g * (coup + coup.adjoint());
}

Operator h_driven_two_qubit(double g, double Omega, double Delta_sigma, double Delta_a, std::size_t cutoff)
{
    if (cutoff < 2) throw Error(ErrorKind::InvalidDimension, "cavity cutoff must be at least 2");
    const HilbertSpace sp({2, 2, cutoff}, {"q1", "q2", "a"});
    const Operator a = embed(destroy(cutoff), sp, 2);
    const Operator coup =
        (embed(hilbert::sigma_minus(), sp, 0) + embed(hilbert::sigma_minus(), sp, 1)) * a.adjoint();
    return driven_qubit(sp, 0, Omega, Delta_sigma) + driven_qubit(sp, 1, Omega, Delta_sigma) +
           Delta_a * (a.adjoint() * a) + g * (coup + coup.adjoint());
}

} // namespace usc::effective
