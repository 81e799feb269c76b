#include <gtest/gtest.h>

#include <cmath>

#include "usc/models.hpp"
#include "usc/squeeze_amp.hpp"

using namespace usc;
using namespace usc::squeeze_amp;
using hilbert::destroy;
using hilbert::embed;

namespace {

double block_diff(const Operator& a, const Operator& b, Eigen::Index n)
{
    return (a.dense().topLeftCorner(n, n) - b.dense().topLeftCorner(n, n)).cwiseAbs().maxCoeff();
}

struct WarningCounter {
    int count = 0;
    WarningCounter()
    {
        set_warning_handler([this](std::string_view) { ++count; });
    }
    ~WarningCounter() { set_warning_handler({}); }
};

} // namespace

TEST(Bogoliubov, ZeroSqueezingIsIdentityMap)
{
    const Operator H = hilbert::number(10) + 0.3 * (destroy(10) + hilbert::create(10));
    EXPECT_LT((bogoliubov(0, SqueezeFrame{0.0, 0.0}, H).dense() - H.dense()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Bogoliubov, DiagonalizesParametricDrive)
{
    const models::DpaParams p{3.0, 5.0, 0.7};
    const auto [r, w] = models::dpa_frame(p);
    const SqueezeFrame f{r, p.theta_2ph};
    const Operator D = bogoliubov_padded(0, f, [&](std::size_t n) { return models::h_dpa(p, n).H; }, 80, 300);
    const Dense d = D.dense();
    for (Eigen::Index n = 0; n + 2 < 40; ++n) EXPECT_LT(std::abs(d(n, n + 2)), 1e-7) << n;
    for (Eigen::Index n = 1; n < 40; ++n) EXPECT_NEAR((d(n, n) - d(0, 0)).real(), n * w, 1e-7);
}

TEST(Bogoliubov, InverseConjugation)
{
    const SqueezeFrame f{0.4, 0.9};
    const SqueezeFrame inv{0.4, 0.9 + pi};
    const Operator H = hilbert::number(60) + 0.2 * (destroy(60) * destroy(60) + hilbert::create(60) * hilbert::create(60));
    const Operator back = bogoliubov(0, inv, bogoliubov(0, f, H));
    EXPECT_LT(block_diff(back, H, 20), 1e-9);
}

TEST(Bogoliubov, PreservesSpectrum)
{
    models::JcParams p;
    p.omega_cav = 1.0;
    p.omega_q = 0.9;
    p.g = 0.1;
    const Operator H = models::h_jc(p, 30);
    const Operator T = bogoliubov_padded(1, SqueezeFrame{0.5, 0.0}, [&](std::size_t n) { return models::h_jc(p, n); }, 70, 300);
    Eigen::SelfAdjointEigenSolver<Dense> a(H.dense()), b(T.dense());
    for (int k = 0; k < 6; ++k) EXPECT_NEAR(a.eigenvalues()(k), b.eigenvalues()(k), 1e-8);
}

TEST(EnhancedCouplings, Values)
{
    EXPECT_EQ(enhanced_couplings(CouplingKind::Optomech, 0.3, 0.0).exact, 0.3);
    EXPECT_EQ(enhanced_couplings(CouplingKind::AtomRotating, 0.3, 0.0).exact, 0.3);
    EXPECT_EQ(enhanced_couplings(CouplingKind::AtomCounterRotating, 0.3, 0.0).exact, 0.0);
    EXPECT_EQ(enhanced_couplings(CouplingKind::Cooperativity, 5.0, 0.0).exact, 5.0);
    EXPECT_NEAR(enhanced_couplings(CouplingKind::Optomech, 1.0, 2.0).exact, 27.308, 1e-3);
    const Enhanced c = enhanced_couplings(CouplingKind::Cooperativity, 1.0, 1.0);
    EXPECT_NEAR(c.exact, 2.381, 1e-3);
    EXPECT_NEAR(c.asymptotic, 1.847, 1e-3);
    EXPECT_NEAR(enhanced_couplings(CouplingKind::AtomCounterRotating, 1.0, 1.0).exact, -std::sinh(1.0), 1e-15);
}

TEST(Bath, Cancellation)
{
    const BathCoefficients c = squeezed_bath_coeffs(SqueezeFrame{0.8, 0.3}, SqueezedBathParams{0.8, 0.3 + pi, 1.0});
    EXPECT_LT(std::abs(c.N_sq), 1e-15);
    EXPECT_LT(std::abs(c.M_sq), 1e-15);
    // away from the cancellation point the noise is back
    for (double re : {0.0, 0.4, 1.2}) {
        EXPECT_GT(squeezed_bath_coeffs(SqueezeFrame{0.8, 0.3}, SqueezedBathParams{re, 0.3 + pi, 1.0}).N_sq, 1e-3);
    }
    EXPECT_GT(squeezed_bath_coeffs(SqueezeFrame{0.8, 0.3}, SqueezedBathParams{0.8, 0.3, 1.0}).N_sq, 1e-3);
}

TEST(Bath, Reductions)
{
    const double r = 0.6;
    const BathCoefficients c = squeezed_bath_coeffs(SqueezeFrame{r, 0.2}, SqueezedBathParams{0.0, 0.0, 1.0});
    EXPECT_NEAR(c.N_sq, std::sinh(r) * std::sinh(r), 1e-14);
    EXPECT_NEAR(std::abs(c.M_sq), std::cosh(r) * std::sinh(r), 1e-14);
    const BathCoefficients b = squeezed_bath_coeffs(SqueezeFrame{0.0, 0.0}, SqueezedBathParams{0.9, 1.0, 1.0});
    EXPECT_NEAR(b.N_sq, std::sinh(0.9) * std::sinh(0.9), 1e-14);
}

TEST(MasterEquation, CancellationLeavesPlainDecay)
{
    const std::size_t n = 6;
    const Operator H = hilbert::number(n);
    const LindbladModel sq = squeezed_master_equation(SqueezeFrame{0.5, 0.0}, SqueezedBathParams{0.5, pi, 0.2}, H, 0);
    const LindbladModel plain{H, {Channel{destroy(n), 0.2, dynamics::ChannelKind::Standard, ""}}};
    const Dense a = dynamics::liouvillian(sq), b = dynamics::liouvillian(plain);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(MasterEquation, SqueezedVacuumOccupation)
{
    const std::size_t n = 40;
    const LindbladModel m =
        squeezed_master_equation(SqueezeFrame{0.5, 0.0}, SqueezedBathParams{0.0, 0.0, 0.3}, hilbert::number(n), 0);
    EXPECT_LT(dynamics::trace_preservation_error(m), 1e-12);
    const auto rho = dynamics::steady_state(m);
    EXPECT_NEAR(rho.expect(hilbert::number(n)).real(), std::sinh(0.5) * std::sinh(0.5), 1e-6);
}

TEST(SqueezedJc, CouplingsMatchBogoliubovOfLabCoupling)
{
    const double g = 0.1;
    const SqueezeFrame f{0.6, 0.4};
    const std::size_t n = 12;
    const SqueezedJc s = h_squeezed_jc(2.0, 0.5, g, f, n);
    EXPECT_NEAR(s.g_rw, g * std::cosh(0.6), 1e-15);
    EXPECT_NEAR(s.g_cr, -g * std::sinh(0.6), 1e-15);
    auto lab = [&](std::size_t m) {
        const HilbertSpace sp({2, m});
        const Operator a = embed(destroy(m), sp, 1);
        const Operator sp_ = embed(hilbert::sigma_plus(), sp, 0);
        return g * (a * sp_ + a.adjoint() * sp_.adjoint());
    };
    const Operator coupling = bogoliubov_padded(1, f, lab, n, 200);
    const HilbertSpace sp({2, n});
    const Operator free = 2.0 * embed(hilbert::number(n), sp, 1) + 0.25 * embed(hilbert::sigma_z(), sp, 0);
    EXPECT_LT(block_diff(s.H - free, coupling, 2 * static_cast<Eigen::Index>(n)), 1e-10);
}

TEST(SqueezedOptomech, MatchesBogoliubovWithStaticForce)
{
    const double g0 = 0.05;
    const SqueezeFrame f{0.5, 0.3};
    const std::size_t nc = 10, nm = 4;
    const SqueezedOptomech s = h_squeezed_optomech(3.0, 1.0, g0, f, nc, nm, SqueezedOptomechForm::Full, true);
    EXPECT_NEAR(s.g_om, g0 * std::cosh(1.0), 1e-15);
    EXPECT_NEAR(s.g_2ph, g0 * std::sinh(1.0), 1e-15);
    auto lab = [&](std::size_t m) {
        const HilbertSpace sp({m, nm});
        const Operator a = embed(destroy(m), sp, 0);
        const Operator b = embed(destroy(nm), sp, 1);
        return -g0 * ((a.adjoint() * a) * (b + b.adjoint()));
    };
    const Operator coupling = bogoliubov_padded(0, f, lab, nc, 200);
    const HilbertSpace sp({nc, nm});
    const Operator free = 3.0 * embed(hilbert::number(nc), sp, 0) + 1.0 * embed(hilbert::number(nm), sp, 1);
    EXPECT_LT(block_diff(s.H - free, coupling, static_cast<Eigen::Index>(nc * nm)), 1e-10);
}

TEST(SqueezedOptomech, ValidityFlags)
{
    EXPECT_TRUE(h_squeezed_optomech(50.0, 1.0, 0.01, SqueezeFrame{0.2, 0.0}, 4, 3).rwa_valid);
    EXPECT_FALSE(h_squeezed_optomech(2.0, 1.0, 0.01, SqueezeFrame{0.2, 0.0}, 4, 3).rwa_valid);
    EXPECT_TRUE(h_squeezed_optomech(0.5, 1.0, 0.01, SqueezeFrame{0.2, 0.0}, 4, 3).hyper_raman_resonant);
}

TEST(Kerr, NoSqueezing)
{
    const KerrAmplification k = kerr_amplification(KerrAmpParams{0.03, 0.0, false});
    EXPECT_NEAR(k.g_gamma, 0.03, 1e-15);
    EXPECT_NEAR(k.kappa_amp, 2.0, 1e-12);
}

TEST(Kerr, SmallAngleGain)
{
    const KerrAmplification k = kerr_amplification(KerrAmpParams{0.01, 1.0, false});
    EXPECT_NEAR(k.kappa_amp, 2.0 * std::atan(std::tan(0.01) * std::cosh(2.0)) / 0.01, 1e-12);
    EXPECT_NEAR(k.kappa_amp / (2.0 * std::cosh(2.0)), 1.0, 1e-3);
    EXPECT_NEAR(k.kappa_small_angle, 7.524, 1e-3);
    EXPECT_NEAR(k.theta2, std::atanh(-std::cos(0.01) * std::tanh(2.0)), 1e-12);
    EXPECT_FALSE(k.circuit.empty());
}

TEST(Kerr, GainIsAtLeastTwo)
{
    for (double g = 0.05; g < pi / 2.0; g += 0.1) {
        for (double th = 0.0; th <= 2.0; th += 0.25) {
            EXPECT_GE(kerr_amplification(KerrAmpParams{g, th, false}).kappa_amp, 2.0 - 1e-12);
        }
    }
}

TEST(Kerr, CircuitIdentitySingleMode)
{
    const KerrVerification v = verify_kerr_circuit(KerrAmpParams{0.05, 0.6, false}, 12, 400);
    EXPECT_LT(v.residual, 1e-8);
}

TEST(Kerr, CircuitIdentityAcrossParameters)
{
    for (double g : {0.02, 0.1}) {
        for (double th : {0.3, 1.0}) {
            EXPECT_LT(verify_kerr_circuit(KerrAmpParams{g, th, false}, 8, 400).residual, 1e-8) << g << " " << th;
        }
    }
}

TEST(Kerr, CircuitIdentityTwoMode)
{
    EXPECT_LT(verify_kerr_circuit(KerrAmpParams{0.05, 0.6, true}, 5, 300).residual, 1e-8);
}

TEST(Displacement, Gains)
{
    const cplx alpha = std::polar(0.7, 0.4);
    EXPECT_LT(std::abs(displacement_amplification(alpha, 0.0, DisplacementMode::PhaseSensitive, 0.8) - alpha), 1e-15);
    EXPECT_LT(std::abs(displacement_amplification(alpha, std::log(3.0), DisplacementMode::PhaseSensitive, 0.8) - 3.0 * alpha),
              1e-14);
    EXPECT_LT(std::abs(displacement_amplification(alpha, std::log(3.0), DisplacementMode::PhaseSensitive, 0.8 + pi) - alpha / 3.0),
              1e-14);
    EXPECT_NEAR(std::abs(displacement_amplification(1.0, 1.38, DisplacementMode::PhaseInsensitive)), 2.11, 5e-3);
    for (double r : {0.1, 0.7, 2.0}) {
        EXPECT_NEAR(std::arg(displacement_amplification(alpha, r, DisplacementMode::PhaseInsensitive)), 0.4, 1e-15);
    }
}

TEST(Displacement, SplitSequenceIdentity)
{
    const cplx alpha(0.5, 0.3);
    const double r = 0.6;
    const Dense U = split_displacement(8, alpha, r, 300);
    const Dense D = hilbert::displace_block(8, std::cosh(r) * alpha, 300);
    const cplx phase = std::exp(cplx(0.0, std::sinh(2.0 * r) * std::imag(alpha * alpha) / 4.0));
    EXPECT_LT((U - phase * D).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(TrotterAmp, CommutingQuadratureIsExactInOneStep)
{
    // the squeeze sandwich maps (a + a^dag) to e^{-r} and e^{r} times itself, which commute
    const std::size_t n = 80;
    const Operator H = 0.2 * (destroy(n) + hilbert::create(n));
    const TrotterAmplification t = trotterized_hamiltonian_amplification(H, 0, 0.5, 1, 1.0, 8);
    EXPECT_LT(t.error, 1e-8);
}

TEST(TrotterAmp, ErrorFallsAsOneOverSteps)
{
    const std::size_t n = 40;
    const HilbertSpace sp({2, n});
    const Operator a = embed(destroy(n), sp, 1);
    const Operator s = embed(hilbert::sigma_minus(), sp, 0);
    const Operator H = 0.3 * (a * s.adjoint() + a.adjoint() * s);
    std::vector<double> lx, ly;
    double prev = 1e300;
    for (std::size_t N : {4u, 8u, 16u, 32u}) {
        const double e = trotterized_hamiltonian_amplification(H, 1, 0.5, N, 1.0, 4).error;
        EXPECT_LT(e, prev);
        prev = e;
        lx.push_back(std::log(static_cast<double>(N)));
        ly.push_back(std::log(e));
    }
    const double slope = (ly.back() - ly.front()) / (lx.back() - lx.front());
    EXPECT_NEAR(slope, -1.0, 0.15);
}

TEST(TrotterAmp, InteractionIsAmplified)
{
    // |e,0> under g(a sigma+ + h.c.): P_e = cos^2(g_eff t); the protocol's g_eff exceeds g
    const std::size_t n = 40;
    const HilbertSpace sp({2, n});
    const Operator a = embed(destroy(n), sp, 1);
    const Operator s = embed(hilbert::sigma_minus(), sp, 0);
    const double g = 0.3, r = 1.1;
    const Operator H = g * (a * s.adjoint() + a.adjoint() * s);
    const TrotterAmplification t = trotterized_hamiltonian_amplification(H, 1, r, 6, 1.0, 4);
    const Vec psi = t.U_protocol.dense().col(static_cast<Eigen::Index>(sp.index({1, 0})));
    const double pe = std::norm(psi(static_cast<Eigen::Index>(sp.index({1, 0}))));
    const double bare = std::pow(std::cos(g), 2);
    EXPECT_LT(pe, bare);
    const double ratio = std::acos(std::sqrt(pe)) / g;
    EXPECT_GT(ratio, 1.2);
    EXPECT_LT(ratio, std::cosh(r) * 1.1);
}

TEST(Dispersive, Limits)
{
    DispersiveParams p;
    p.g = 0.01;
    p.Delta_q = 1.0;
    p.omega_sq = 0.5;
    EXPECT_NEAR(dispersive_shift(p).chi, 2.0 * p.g * p.g / 0.5, 1e-15);
    EXPECT_EQ(dispersive_shift(p).chi_trans, dispersive_shift(p).chi);
    p.r = 0.63;
    const double base = 2.0 * p.g * p.g / 0.5;
    EXPECT_NEAR(dispersive_shift(p).chi / base, std::pow(std::cosh(0.63), 2) + std::pow(std::sinh(0.63), 2) / 3.0, 1e-12);
    // anharmonic correction vanishes as (Delta_q -+ omega_sq) / chi_anh
    p.chi_anh = 1e6 * p.g;
    const DispersiveShift d = dispersive_shift(p);
    EXPECT_LT(std::abs(d.chi_trans - d.chi), 2.0 * 1.5 / *p.chi_anh * std::abs(d.chi));
    p.chi_anh = 1e12 * p.g;
    const DispersiveShift e = dispersive_shift(p);
    EXPECT_LT(std::abs(e.chi_trans - e.chi), 1e-9 * std::abs(e.chi));
}

TEST(Dispersive, WarnsNearPole)
{
    WarningCounter w;
    DispersiveParams p;
    p.g = 0.1;
    p.Delta_q = 1.0;
    p.omega_sq = 0.95;
    dispersive_shift(p);
    EXPECT_GE(w.count, 1);
}
