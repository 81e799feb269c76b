#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "usc/models.hpp"

using namespace usc;
using namespace usc::models;

namespace {

Eigen::VectorXd levels(const Operator& H)
{
    Eigen::SelfAdjointEigenSolver<Dense> es(H.dense(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double hermiticity(const Operator& H)
{
    const Dense d = H.dense();
    return (d - d.adjoint()).cwiseAbs().maxCoeff() / std::max(1.0, d.cwiseAbs().maxCoeff());
}

// Eigenvalues inside [lo, hi].
std::vector<double> window(const Operator& H, double lo, double hi)
{
    std::vector<double> out;
    const Eigen::VectorXd e = levels(H);
    for (Eigen::Index k = 0; k < e.size(); ++k) {
        if (e(k) >= lo && e(k) <= hi) out.push_back(e(k));
    }
    return out;
}

JcParams rabi_params(double eta)
{
    JcParams p;
    p.omega_cav = 1.0;
    p.omega_q = 1.0;
    p.g = eta;
    return p;
}

} // namespace

TEST(Optomech, FreeSpectrumWithoutCoupling)
{
    OptomechParams p;
    p.omega_cav = 3.0;
    p.omega_m = 0.7;
    const Dense H = h_optomech(p, 4, 5).dense();
    EXPECT_LT((H - Dense(H.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-15);
    for (std::size_t n = 0; n < 4; ++n) {
        for (std::size_t m = 0; m < 5; ++m) {
            EXPECT_NEAR(H(5 * n + m, 5 * n + m).real(), 3.0 * n + 0.7 * m, 1e-14);
        }
    }
}

TEST(Optomech, SinglePhotonPolaronShift)
{
    OptomechParams p;
    p.omega_cav = 5.0;
    p.omega_m = 1.0;
    p.g0 = 0.01;
    const Operator H = h_optomech(p, 3, 20);
    EXPECT_LT(hermiticity(H), 1e-12);
    const auto e = window(H, 4.5, 5.5);
    ASSERT_FALSE(e.empty());
    const double shift = e.front() - 5.0;
    EXPECT_NEAR(shift / (-p.g0 * p.g0 / p.omega_m), 1.0, 0.01);
}

TEST(Optomech, ZeroPointFluctuation) { EXPECT_NEAR(zero_point_fluctuation(2.0, 4.0), 0.25, 1e-15); }

TEST(Linearize, NoDrive)
{
    OptomechParams p;
    p.g0 = 0.01;
    p.kappa = 0.1;
    p.detuning = 1.0;
    const Linearized l = linearize_optomech(p);
    EXPECT_EQ(std::abs(l.alpha), 0.0);
    EXPECT_EQ(std::abs(l.beta), 0.0);
    EXPECT_EQ(l.g_c, 0.0);
}

TEST(Linearize, DecoupledCavity)
{
    OptomechParams p;
    p.kappa = 0.3;
    p.detuning = 0.8;
    p.drive = cplx(1.5, -0.2);
    const Linearized l = linearize_optomech(p);
    const cplx I(0.0, 1.0);
    EXPECT_LT(std::abs(l.alpha - (-I * p.drive / (I * p.detuning + p.kappa / 2.0))), 1e-14);
}

TEST(Linearize, MatchesClassicalSteadyState)
{
    // d alpha/dt = -(i D' + kappa/2) alpha - i E,  D' = D - 2 g0 Re beta
    // d beta/dt  = -(i w_m + gamma_m/2) beta + i g0 |alpha|^2
    OptomechParams p;
    p.omega_m = 1.0;
    p.detuning = 1.0;
    p.kappa = 0.1;
    p.gamma_m = 1e-4;
    p.g0 = 1e-3;
    p.drive = 10.0;
    const Linearized l = linearize_optomech(p);

    using State = std::array<double, 4>;
    auto rhs = [&](const State& x, State& dx, double) {
        const cplx I(0.0, 1.0);
        const cplx al(x[0], x[1]), be(x[2], x[3]);
        const double det = p.detuning - 2.0 * p.g0 * be.real();
        const cplx da = -(I * det + p.kappa / 2.0) * al - I * p.drive;
        const cplx db = -(I * p.omega_m + p.gamma_m / 2.0) * be + I * p.g0 * std::norm(al);
        dx = {da.real(), da.imag(), db.real(), db.imag()};
    };
    State x{0.0, 0.0, 0.0, 0.0};
    namespace ode = boost::numeric::odeint;
    // Mechanical relaxation (2 / gamma_m) is the slow scale.
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-12, 1e-12), rhs, x, 0.0,
                            40.0 / p.gamma_m, 0.1);
    const cplx alpha(x[0], x[1]), beta(x[2], x[3]);
    EXPECT_LT(std::abs(l.alpha - alpha) / std::abs(alpha), 1e-6);
    EXPECT_LT(std::abs(l.beta - beta) / std::abs(beta), 1e-6);
    EXPECT_NEAR(l.g_c / (p.g0 * std::abs(alpha)), 1.0, 1e-6);
    EXPECT_LT(hermiticity(l.H_lin), 1e-12);
}

TEST(DoubleCavity, DressedStatesAreOrthonormal)
{
    DoubleCavityParams p;
    p.J = 1.0;
    const DoubleCavity dc = h_double_cavity(p, 0.02, 10.0, 2.0, 3, 4);
    EXPECT_NEAR(std::abs(dc.one_plus.dot(dc.one_minus)), 0.0, 1e-15);
    EXPECT_NEAR(dc.two_plus.norm(), 1.0, 1e-15);
    EXPECT_NEAR(dc.two_minus.norm(), 1.0, 1e-15);
    EXPECT_NEAR(dc.two_zero.norm(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(dc.two_plus.dot(dc.two_zero)), 0.0, 1e-15);
    // |1+->, |1-> are eigenvectors of the resonant Hamiltonian
    const Vec h1 = dc.H_dc.apply(dc.one_plus);
    EXPECT_LT((h1 - dc.one_plus.dot(h1) * dc.one_plus).norm(), 1e-12);
}

TEST(DoubleCavity, FreePartWithoutCoupling)
{
    DoubleCavityParams p;
    p.J = 1.0;
    const DoubleCavity dc = h_double_cavity(p, 0.0, 10.0, 2.0, 3, 3);
    const Dense H = dc.H_dc.dense();
    EXPECT_LT((H - Dense(H.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DoubleCavity, ResonantSplittingMatchesFullModel)
{
    DoubleCavityParams p;
    p.J = 1.0;
    const double g0 = 0.02;
    const DoubleCavity dc = h_double_cavity(p, g0, 10.0, 2.0, 3, 4);
    const auto full = window(dc.H_full, 10.9, 11.1);
    const auto rwa = window(dc.H_dc, 10.9, 11.1);
    ASSERT_EQ(full.size(), 2u);
    ASSERT_EQ(rwa.size(), 2u);
    EXPECT_NEAR(rwa[1] - rwa[0], g0, 1e-12);
    EXPECT_NEAR((full[1] - full[0]) / (rwa[1] - rwa[0]), 1.0, 0.03);
}

TEST(ModulatedCoupling, BesselValues)
{
    DoubleCavityParams p;
    p.n0 = 1;
    EXPECT_EQ(modulated_coupling_gM(p, 1.0), 0.0);
    p.zeta = 1.525;
    EXPECT_NEAR(modulated_coupling_gM(p, 1.0), 0.243, 1e-3);
    const double plus = modulated_coupling_gM(p, 1.0);
    p.zeta = -1.525;
    EXPECT_EQ(modulated_coupling_gM(p, 1.0), plus);
    p.n0 = 0;
    EXPECT_THROW(modulated_coupling_gM(p, 1.0), Error);
}

TEST(Polaritons, UncoupledLimits)
{
    auto e = polariton_energies(1.0, 1.0, 0.0);
    EXPECT_NEAR(e.E_plus, 1.0, 1e-15);
    EXPECT_NEAR(e.E_minus, 1.0, 1e-15);
    e = polariton_energies(1.7, 1.0, 0.0);
    EXPECT_NEAR(e.E_plus, 1.7, 1e-15);
    EXPECT_NEAR(e.E_minus, 1.0, 1e-15);
}

TEST(Polaritons, SymplecticOracle)
{
    // Heisenberg matrix of D a^dag a + w b^dag b - g (a + a^dag)(b + b^dag) on (a, b, a^dag, b^dag)
    const double D = 1.5, w = 1.0, g = 0.1;
    Eigen::Matrix4d M;
    M << D, -g, 0, -g,
        -g, w, -g, 0,
        0, g, -D, g,
        g, 0, g, -w;
    Eigen::EigenSolver<Eigen::Matrix4d> es(M);
    std::vector<double> ev;
    for (int k = 0; k < 4; ++k) {
        if (es.eigenvalues()(k).real() > 0) ev.push_back(es.eigenvalues()(k).real());
    }
    std::sort(ev.begin(), ev.end());
    ASSERT_EQ(ev.size(), 2u);
    const auto e = polariton_energies(D, w, g);
    EXPECT_TRUE(e.stable);
    EXPECT_NEAR(e.E_minus, ev[0], 1e-8);
    EXPECT_NEAR(e.E_plus, ev[1], 1e-8);
}

TEST(Polaritons, TwoToOneDetuning)
{
    const double d = polariton_two_to_one_detuning(1.0, 0.05, 1.5, 2.5);
    const auto e = polariton_energies(d, 1.0, 0.05);
    EXPECT_NEAR(e.E_plus, 2.0 * e.E_minus, 1e-10);
    EXPECT_THROW(polariton_two_to_one_detuning(1.0, 0.05, 1.01, 1.2), Error);
}

TEST(Rabi, UncoupledSpectrumIsSharedByAllGauges)
{
    const JcParams p = rabi_params(0.0);
    for (auto gauge : {GaugeChoice::SimpleRabi, GaugeChoice::Dipole, GaugeChoice::CoulombNaive, GaugeChoice::CoulombCorrected}) {
        const Eigen::VectorXd e = levels(h_rabi(p, gauge, 6));
        // {n -+ 1/2}: -0.5, 0.5, 0.5, 1.5, 1.5, ...
        EXPECT_NEAR(e(0), -0.5, 1e-12);
        EXPECT_NEAR(e(1), 0.5, 1e-12);
        EXPECT_NEAR(e(2), 0.5, 1e-12);
        EXPECT_NEAR(e(3), 1.5, 1e-12);
    }
}

TEST(Rabi, GaugeAgreementAcrossCouplings)
{
    for (double eta : {0.1, 0.5, 1.0}) {
        const JcParams p = rabi_params(eta);
        const Eigen::VectorXd d = levels(h_rabi(p, GaugeChoice::Dipole, 80));
        const Eigen::VectorXd c = levels(h_rabi(p, GaugeChoice::CoulombCorrected, 80));
        for (int k = 0; k < 5; ++k) EXPECT_NEAR(d(k), c(k), 1e-6) << "eta " << eta << " level " << k;
    }
}

TEST(Rabi, NaiveCoulombBreaksDown)
{
    const JcParams p = rabi_params(0.5);
    const double d = levels(h_rabi(p, GaugeChoice::Dipole, 60))(0);
    const double n = levels(h_rabi(p, GaugeChoice::CoulombNaive, 60))(0);
    EXPECT_GT(std::abs(n - d) / std::abs(d), 0.01);
}

TEST(Rabi, SimpleRabiIsDipoleWithoutSelfEnergy)
{
    // a -> i a maps the sigma_x (a + a^dag) coupling onto i sigma_x (a^dag - a)
    const JcParams p = rabi_params(0.7);
    const Eigen::VectorXd s = levels(h_rabi(p, GaugeChoice::SimpleRabi, 40));
    const Eigen::VectorXd d = levels(h_rabi(p, GaugeChoice::Dipole, 40));
    const double self = p.omega_cav * 0.7 * 0.7;
    EXPECT_LT((d - s - Eigen::VectorXd::Constant(s.size(), self)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Rabi, CutoffConvergence)
{
    for (auto gauge : {GaugeChoice::SimpleRabi, GaugeChoice::Dipole, GaugeChoice::CoulombCorrected}) {
        const JcParams p = rabi_params(0.5);
        const Eigen::VectorXd a = levels(h_rabi(p, gauge, 40)).head(5);
        const Eigen::VectorXd b = levels(h_rabi(p, gauge, 80)).head(5);
        for (int k = 0; k < 5; ++k) EXPECT_LT(std::abs(a(k) - b(k)) / std::max(1.0, std::abs(b(k))), 1e-8);
    }
}

TEST(Jc, VacuumRabiSplitting)
{
    JcParams p;
    p.omega_cav = 1.0;
    p.omega_q = 1.0;
    p.g = 0.05;
    const Operator H = h_jc(p, 10);
    EXPECT_LT(hermiticity(H), 1e-12);
    const auto e1 = window(H, 0.3, 0.7);
    ASSERT_EQ(e1.size(), 2u);
    EXPECT_NEAR(e1[0], 0.5 - p.g, 1e-12);
    EXPECT_NEAR(e1[1], 0.5 + p.g, 1e-12);
    for (int n = 1; n <= 5; ++n) {
        const auto e = window(H, n - 0.5 - 0.4, n - 0.5 + 0.4);
        ASSERT_EQ(e.size(), 2u) << n;
        EXPECT_NEAR(e[1] - e[0], 2.0 * p.g * std::sqrt(n), 1e-12);
    }
}

TEST(Jc, ProductStatesWithoutCoupling)
{
    JcParams p;
    p.omega_cav = 1.0;
    p.omega_q = 1.3;
    const Dense H = h_jc(p, 5).dense();
    EXPECT_LT((H - Dense(H.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Jc, Cooperativity)
{
    JcParams p;
    p.g = 0.1;
    p.kappa = 0.01;
    p.gamma = 0.02;
    EXPECT_NEAR(p.cooperativity(), 50.0, 1e-12);
    p.kappa = -1.0;
    EXPECT_THROW(p.validate(), Error);
}

TEST(Dicke, SingleAtomIsRabi)
{
    const JcParams p = rabi_params(0.3);
    const Eigen::VectorXd d = levels(h_dicke(1.0, 1.0, 0.3, 1, 20));
    const Eigen::VectorXd r = levels(h_rabi(p, GaugeChoice::SimpleRabi, 20));
    EXPECT_LT((d - r).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Dicke, FreeSpectrum)
{
    const Eigen::VectorXd e = levels(h_dicke(1.0, 1.2, 0.0, 2, 4));
    EXPECT_NEAR(e(0), -1.2, 1e-12);
    EXPECT_NEAR(e(1), -0.2, 1e-12);
}

TEST(Dicke, DipoleGaugeSelfEnergyShiftsGround)
{
    const double b = levels(h_dicke(1.0, 1.0, 0.3, 2, 40, DickeGauge::Bare))(0);
    const double d = levels(h_dicke(1.0, 1.0, 0.3, 2, 40, DickeGauge::Dipole))(0);
    EXPECT_GT(std::abs(d - b), 1e-3);
    EXPECT_LT(hermiticity(h_dicke(1.0, 1.0, 0.3, 2, 10, DickeGauge::Dipole)), 1e-12);
}

TEST(Dicke, CutoffConvergence)
{
    const Eigen::VectorXd a = levels(h_dicke(1.0, 1.0, 0.3, 2, 30)).head(5);
    const Eigen::VectorXd b = levels(h_dicke(1.0, 1.0, 0.3, 2, 60)).head(5);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(TavisCummings, SingleAtomIsJc)
{
    JcParams p;
    p.g = 0.1;
    EXPECT_LT((levels(h_tavis_cummings(1.0, 1.0, 0.1, 1, 6)) - levels(h_jc(p, 6))).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TavisCummings, BrightAndDarkStates)
{
    const double g = 0.01;
    for (std::size_t N = 1; N <= 4; ++N) {
        const double ground = -0.5 * static_cast<double>(N);
        const auto e = window(h_tavis_cummings(1.0, 1.0, g, N, 3), ground + 0.5, ground + 1.5);
        ASSERT_EQ(e.size(), N + 1) << N;
        const double gcol = collective_map(CollectiveParams{N, g, {}, 0.0, 0.0}).g_col;
        EXPECT_NEAR(e.back() - e.front(), 2.0 * gcol, 1e-10);
        for (std::size_t k = 1; k + 1 < e.size(); ++k) EXPECT_NEAR(e[k], ground + 1.0, 1e-12);
    }
}

TEST(TavisCummings, CollectiveAndHolsteinPrimakoff)
{
    const double g = 0.01;
    const std::size_t N = 20;
    const double ground = -0.5 * static_cast<double>(N);
    const auto c = window(h_tavis_cummings_collective(1.0, 1.0, g, N, 4), ground + 0.5, ground + 1.5);
    const auto h = window(h_holstein_primakoff(1.0, 1.0, g, N, 4, 4), ground + 0.5, ground + 1.5);
    ASSERT_EQ(c.size(), 2u);
    ASSERT_EQ(h.size(), 2u);
    EXPECT_NEAR(c[1] - c[0], 2.0 * std::sqrt(20.0) * g, 1e-10);
    EXPECT_NEAR(h[1] - h[0], 2.0 * std::sqrt(20.0) * g, 1e-10);
}

TEST(TavisCummings, CollectiveSpinAlgebra)
{
    const CollectiveSpin s = collective_spin(3);
    const Dense comm = (s.Sp * s.Sm - s.Sm * s.Sp).dense();
    EXPECT_LT((comm - 2.0 * s.Sz.dense()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(s.Sz(0, 0).real(), -1.5, 1e-15);
}

TEST(Dpa, FrameQuantities)
{
    auto [r0, w0] = dpa_frame(DpaParams{0.0, 2.0, 0.0});
    EXPECT_EQ(r0, 0.0);
    EXPECT_EQ(w0, 2.0);
    auto [r, w] = dpa_frame(DpaParams{3.0, 5.0, 0.0});
    EXPECT_NEAR(r, 0.25 * std::log(4.0), 1e-15);
    EXPECT_NEAR(r, 0.34657, 1e-5);
    EXPECT_NEAR(w, 4.0, 1e-15);
}

TEST(Dpa, SpectrumIsEvenlySpaced)
{
    const Dpa d = h_dpa(DpaParams{3.0, 5.0, 0.4}, 80);
    EXPECT_TRUE(d.stable);
    const Eigen::VectorXd e = levels(d.H);
    for (int n = 1; n < 8; ++n) EXPECT_NEAR(e(n) - e(0), n * d.omega_sq, 1e-8);
    // ground energy (omega_sq - Delta) / 2
    EXPECT_NEAR(e(0), 0.5 * (4.0 - 5.0), 1e-8);
}

TEST(Dpa, UnstableRegionIsFlagged)
{
    const Dpa d = h_dpa(DpaParams{5.0, 3.0, 0.0}, 10);
    EXPECT_FALSE(d.stable);
    EXPECT_TRUE(std::isnan(d.r));
    try {
        dpa_frame(DpaParams{5.0, 3.0, 0.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InstabilityError);
    }
}

TEST(Hopfield, GaugesAreHermitian)
{
    for (auto gauge : {HopfieldGauge::Bare, HopfieldGauge::Dipole, HopfieldGauge::Coulomb}) {
        HopfieldParams p;
        p.G = 0.2;
        p.G_prime = 0.04;
        p.gauge = gauge;
        EXPECT_LT(hermiticity(h_hopfield(p, 6, 6)), 1e-12);
    }
    HopfieldParams bad;
    bad.omega_a = 0.0;
    EXPECT_THROW(bad.validate(), Error);
}

TEST(Collective, Map)
{
    EXPECT_NEAR(collective_map(CollectiveParams{1, 0.3, {}, 0.0, 0.0}).g_col, 0.3, 1e-15);
    // 10^12 atoms at 10 Hz give about 10 MHz
    const double g = 2.0 * pi * 10.0;
    EXPECT_NEAR(collective_map(CollectiveParams{1000000000000ULL, g, {}, 0.0, 0.0}).g_col / (2.0 * pi), 1e7, 1e-3);
    EXPECT_NEAR(collective_map(CollectiveParams{3, 0.0, {1.0, 2.0, 2.0}, 0.0, 0.0}).g_col, 3.0, 1e-14);
    const CollectiveMap m = collective_map(CollectiveParams{10, 0.1, {}, 0.01, 0.02});
    EXPECT_NEAR(m.C_col, 10.0 * 50.0, 1e-9);
    EXPECT_NEAR(m.hp_valid_excitation, 1.0, 1e-15);
    EXPECT_THROW(collective_map(CollectiveParams{3, 0.0, {1.0}, 0.0, 0.0}), Error);
}
