#include "usc/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace usc::schemes {

using hilbert::destroy;
using hilbert::embed;

void ThreeWaveParams::validate() const
{
    if (!(omega_a > 0.0) || !(omega_b > 0.0)) throw Error(ErrorKind::DomainError, "mode frequencies must be positive");
    const double slow = std::abs(delta);
    const double fast = std::min({omega_a, omega_b, std::abs(omega_a - omega_b)});
    if (slow > 0.1 * fast) {
        std::ostringstream msg;
        msg << "three-wave RWA: |delta| = " << slow << " is not small against " << fast;
        warn(msg.str());
    }
    const double G = std::max(std::abs(chi * c_B), std::abs(chi * c_R));
    if (G > 0.1 * fast) warn("three-wave stiff-pump couplings are not small against the mode frequencies");
}

ThreeWave three_wave_hopfield(const ThreeWaveParams& p, std::size_t n_a, std::size_t n_b)
{
    p.validate();
    if (n_a < 2 || n_b < 2) throw Error(ErrorKind::InvalidDimension, "mode cutoffs must be at least 2");
    const HilbertSpace sp({n_a, n_b}, {"a", "b"});
    const Operator a = embed(destroy(n_a), sp, 0);
    const Operator b = embed(destroy(n_b), sp, 1);
    ThreeWave out;
    out.G_B = p.chi * p.c_B;
    out.G_R = p.chi * p.c_R;
    const Operator ab = a * b;
    const Operator adb = a.adjoint() * b;
    out.H_eff = -p.delta * (a.adjoint() * a + b.adjoint() * b) + out.G_B * (ab + ab.adjoint()) +
                out.G_R * (adb + adb.adjoint());
    return out;
}

ThreeWaveFull three_wave_full(const ThreeWaveParams& p, std::size_t n_a, std::size_t n_b)
{
    p.validate();
    if (n_a < 2 || n_b < 2) throw Error(ErrorKind::InvalidDimension, "mode cutoffs must be at least 2");
    const HilbertSpace sp({n_a, n_b}, {"a", "b"});
    const Operator a = embed(destroy(n_a), sp, 0);
    const Operator b = embed(destroy(n_b), sp, 1);
    const double wa = p.omega_a + p.delta, wb = p.omega_b + p.delta;
    const double wB = p.omega_a + p.omega_b + 2.0 * p.delta;
    const double wR = p.omega_a - p.omega_b;
    const double cB = p.c_B, cR = p.c_R, chi = p.chi;

    // chi sum_j 2 c_j cos(w_j t) (a e^{-i wa t} + h.c.)(b e^{-i wb t} + h.c.)
    auto pump = [=](double t) { return 2.0 * chi * (cB * std::cos(wB * t) + cR * std::cos(wR * t)); };
    ThreeWaveFull out;
    out.H.static_part = -p.delta * (a.adjoint() * a + b.adjoint() * b);
    out.H.terms.push_back({a * b, [=](double t) { return pump(t) * std::exp(cplx(0.0, -(wa + wb) * t)); }});
    out.H.terms.push_back({(a * b).adjoint(), [=](double t) { return pump(t) * std::exp(cplx(0.0, (wa + wb) * t)); }});
    out.H.terms.push_back({a.adjoint() * b, [=](double t) { return pump(t) * std::exp(cplx(0.0, (wa - wb) * t)); }});
    out.H.terms.push_back({a * b.adjoint(), [=](double t) { return pump(t) * std::exp(cplx(0.0, -(wa - wb) * t)); }});
    return out;
}

CrossKerrOptomech cross_kerr_optomech(double chi, double beta_b, double Delta_b, std::size_t n_a, std::size_t n_b,
                                      bool residual_kerr)
{
    if (n_a < 2 || n_b < 2) throw Error(ErrorKind::InvalidDimension, "mode cutoffs must be at least 2");
    const HilbertSpace sp({n_a, n_b}, {"a", "db"});
    const Operator a = embed(destroy(n_a), sp, 0);
    const Operator db = embed(destroy(n_b), sp, 1);
    const Operator na = a.adjoint() * a;
    CrossKerrOptomech out;
    out.g_om_eff = beta_b * chi;
    out.ratio = Delta_b != 0.0 ? out.g_om_eff / Delta_b : std::numeric_limits<double>::infinity();
    out.omega_a_shift = chi * beta_b * beta_b;
    out.H_sim = Delta_b * (db.adjoint() * db) - out.g_om_eff * (na * (db + db.adjoint()));
    if (residual_kerr) out.H_sim += chi * (na * (db.adjoint() * db));
    return out;
}

Operator cross_kerr_full(double chi, double beta_b, double Delta_b, std::size_t n_a, std::size_t n_b)
{
    if (n_a < 2 || n_b < 2) throw Error(ErrorKind::InvalidDimension, "mode cutoffs must be at least 2");
    const HilbertSpace sp({n_a, n_b}, {"a", "b"});
    const Operator a = embed(destroy(n_a), sp, 0);
    const Operator b = embed(destroy(n_b), sp, 1);
    const Operator nb = b.adjoint() * b;
    return Delta_b * nb + chi * ((a.adjoint() * a) * nb) + Delta_b * beta_b * (b + b.adjoint());
}

} // namespace usc::schemes
