#include "usc/models.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace usc::models {

using hilbert::create;
using hilbert::destroy;
using hilbert::embed;
using hilbert::number;

namespace {

Operator mode(const HilbertSpace& sp, std::size_t site) { return embed(destroy(sp.dim(site)), sp, site); }

void require_cutoff(std::size_t n, const char* what)
{
    if (n < 2) throw Error(ErrorKind::InvalidDimension, std::string(what) + " cutoff must be at least 2");
}

} // namespace

void OptomechParams::validate() const
{
    if (kappa < 0.0 || gamma_m < 0.0) throw Error(ErrorKind::DomainError, "decay rates must be non-negative");
    if (n_th < 0.0) throw Error(ErrorKind::DomainError, "thermal occupation must be non-negative");
    if (!(omega_m > 0.0)) throw Error(ErrorKind::DomainError, "mechanical frequency must be positive");
}

double zero_point_fluctuation(double m_eff, double omega_m)
{
    if (!(m_eff > 0.0) || !(omega_m > 0.0)) throw Error(ErrorKind::DomainError, "mass and frequency must be positive");
    return 1.0 / std::sqrt(2.0 * m_eff * omega_m);
}

Operator h_optomech(const OptomechParams& p, std::size_t n_cav, std::size_t n_mech)
{
    p.validate();
    require_cutoff(n_cav, "cavity");
    require_cutoff(n_mech, "mechanical");
    const HilbertSpace sp({n_cav, n_mech}, {"a", "b"});
    const Operator a = mode(sp, 0);
    const Operator b = mode(sp, 1);
    const Operator na = a.adjoint() * a;
    return p.omega_cav * na + p.omega_m * (b.adjoint() * b) - p.g0 * (na * (b + b.adjoint()));
}

std::vector<Channel> optomech_channels(const OptomechParams& p, std::size_t n_cav, std::size_t n_mech)
{
    p.validate();
    const HilbertSpace sp({n_cav, n_mech}, {"a", "b"});
    const Operator a = mode(sp, 0);
    const Operator b = mode(sp, 1);
    std::vector<Channel> out;
    if (p.kappa > 0.0) out.push_back({a, p.kappa, dynamics::ChannelKind::Standard, "cavity decay"});
    if (p.gamma_m > 0.0) {
        out.push_back({b, p.gamma_m * (p.n_th + 1.0), dynamics::ChannelKind::Standard, "phonon loss"});
        if (p.n_th > 0.0) out.push_back({b.adjoint(), p.gamma_m * p.n_th, dynamics::ChannelKind::Standard, "phonon gain"});
    }
    return out;
}

Linearized linearize_optomech(const OptomechParams& p, std::size_t n_cav, std::size_t n_mech)
{
    p.validate();
    const cplx I(0.0, 1.0);
    const cplx mech_den = I * p.omega_m + p.gamma_m / 2.0;
    auto alpha_of = [&](cplx beta, double& det) {
        det = p.detuning - p.g0 * 2.0 * beta.real();
        const cplx den = I * det + p.kappa / 2.0;
        if (std::abs(den) == 0.0) throw Error(ErrorKind::DomainError, "cavity response is singular");
        return -I * p.drive / den;
    };

    Linearized out;
    cplx beta{0.0, 0.0};
    double det = p.detuning;
    bool converged = false;
    for (std::size_t it = 1; it <= 1000; ++it) {
        const cplx alpha = alpha_of(beta, det);
        const cplx target = I * p.g0 * std::norm(alpha) / mech_den;
        const cplx next = 0.5 * beta + 0.5 * target;
        const double change = std::abs(next - beta);
        beta = next;
        out.iterations = it;
        if (change <= 1e-15 * (1.0 + std::abs(beta))) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw Error(ErrorKind::BistabilityError, "linearization fixed point did not converge in 1000 iterations");
    }
    out.beta = beta;
    out.alpha = alpha_of(beta, det);
    out.detuning_eff = det;
    out.g_c = p.g0 * std::abs(out.alpha);
    out.theta = std::arg(out.alpha);

    const HilbertSpace sp({n_cav, n_mech}, {"da", "db"});
    const Operator a = mode(sp, 0);
    const Operator b = mode(sp, 1);
    const cplx ph = std::exp(-I * out.theta);
    out.H_lin = det * (a.adjoint() * a) + p.omega_m * (b.adjoint() * b) -
                out.g_c * ((ph * a + std::conj(ph) * a.adjoint()) * (b + b.adjoint()));
    return out;
}

void DoubleCavityParams::validate() const
{
    if (n0 < 1) throw Error(ErrorKind::DomainError, "n0 must be a positive integer");
}

DoubleCavity h_double_cavity(const DoubleCavityParams& p, double g0, double omega_cav, double omega_m,
                             std::size_t n_photon, std::size_t n_mech)
{
    p.validate();
    if (n_photon < 3 || n_mech < 3) throw Error(ErrorKind::InvalidDimension, "double cavity needs cutoffs >= 3");
    if (std::abs(omega_m - 2.0 * std::abs(p.J)) > 0.2 * std::abs(g0)) {
        std::ostringstream msg;
        msg << "double cavity off resonance: |omega_m - 2J| = " << std::abs(omega_m - 2.0 * std::abs(p.J));
        warn(msg.str());
    }
    DoubleCavity out;

    const HilbertSpace bare({n_photon, n_photon, n_mech}, {"a", "c", "b"});
    const Operator a = mode(bare, 0);
    const Operator c = mode(bare, 1);
    const Operator b = mode(bare, 2);
    const Operator na = a.adjoint() * a;
    out.H_full = omega_cav * (na + c.adjoint() * c) + omega_m * (b.adjoint() * b) -
                 p.J * (a * c.adjoint() + a.adjoint() * c) - g0 * (na * (b + b.adjoint()));

    const HilbertSpace nm({n_photon, n_photon, n_mech}, {"a_plus", "a_minus", "b"});
    const Operator ap = mode(nm, 0);
    const Operator am = mode(nm, 1);
    const Operator bm = mode(nm, 2);
    const double w_plus = omega_cav + std::abs(p.J);
    const double w_minus = omega_cav - std::abs(p.J);
    const Operator hop = ap * am.adjoint() * bm.adjoint();
    out.H_dc = w_plus * (ap.adjoint() * ap) + w_minus * (am.adjoint() * am) + omega_m * (bm.adjoint() * bm) +
               (g0 / 2.0) * (hop + hop.adjoint());

    auto ket = [&](std::size_t np, std::size_t nmi, std::size_t nb) {
        Vec v = Vec::Zero(static_cast<Eigen::Index>(nm.total()));
        v(static_cast<Eigen::Index>(nm.index({np, nmi, nb}))) = 1.0;
        return v;
    };
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
    out.one_plus = (ket(1, 0, 0) + ket(0, 1, 1)) / s2;
    out.one_minus = (ket(1, 0, 0) - ket(0, 1, 1)) / s2;
    out.two_plus = (ket(2, 0, 0) + s3 * ket(1, 1, 1) + s2 * ket(0, 2, 2)) / s6;
    out.two_minus = (ket(2, 0, 0) - s3 * ket(1, 1, 1) + s2 * ket(0, 2, 2)) / s6;
    out.two_zero = (s2 * ket(2, 0, 0) - ket(0, 2, 2)) / s3;
    return out;
}

double modulated_coupling_gM(const DoubleCavityParams& p, double g0)
{
    p.validate();
    const unsigned order = static_cast<unsigned>(2 * p.n0);
    const double x = 2.0 * p.zeta;
    // J_n(-x) = (-1)^n J_n(x); the order here is even.
    return 0.5 * g0 * std::cyl_bessel_j(static_cast<double>(order), std::abs(x));
}

Polaritons polariton_energies(double Delta, double omega_m, double g_c)
{
    const double d2 = Delta * Delta, w2 = omega_m * omega_m;
    const double rad = (d2 - w2) * (d2 - w2) + 16.0 * Delta * g_c * g_c * omega_m;
    Polaritons out;
    if (rad < 0.0) {
        out.stable = false;
        out.E_plus = out.E_minus = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const double sp = 0.5 * (d2 + w2 + std::sqrt(rad));
    const double sm = 0.5 * (d2 + w2 - std::sqrt(rad));
    out.E_plus = std::sqrt(sp);
    if (sm < 0.0) {
        out.stable = false;
        out.E_minus = std::numeric_limits<double>::quiet_NaN();
    } else {
        out.E_minus = std::sqrt(sm);
    }
    return out;
}

double polariton_two_to_one_detuning(double omega_m, double g_c, double lo, double hi)
{
    auto f = [&](double d) {
        const auto e = polariton_energies(d, omega_m, g_c);
        if (!e.stable) throw Error(ErrorKind::InstabilityError, "polariton spectrum is unstable in the bracket");
        return e.E_plus - 2.0 * e.E_minus;
    };
    double flo = f(lo), fhi = f(hi);
    if (flo * fhi > 0.0) throw Error(ErrorKind::NotBracketedError, "E+ = 2E- is not bracketed");
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace usc::models
