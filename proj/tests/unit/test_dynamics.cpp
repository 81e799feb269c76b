#include <gtest/gtest.h>

#include <cmath>

#include "usc/dynamics.hpp"

using namespace usc;
using namespace usc::dynamics;
using hilbert::embed;

namespace {

TimeGrid grid(double t1, std::size_t n, double tol = 1e-10)
{
    TimeGrid g;
    g.t1 = t1;
    g.n_points = n;
    g.tolerance = tol;
    return g;
}

Operator jc(double wc, double wq, double g, std::size_t n)
{
    const HilbertSpace sp({2, n});
    const Operator a = embed(hilbert::destroy(n), sp, 1);
    const Operator sm = embed(hilbert::sigma_minus(), sp, 0);
    return wc * (a.adjoint() * a) + (wq / 2.0) * embed(hilbert::sigma_z(), sp, 0) +
           g * (a * sm.adjoint() + a.adjoint() * sm);
}

Channel decay(const Operator& op, double rate) { return Channel{op, rate, ChannelKind::Standard, ""}; }

} // namespace

TEST(Grid, Validation)
{
    EXPECT_THROW(grid(0.0, 10).validate(), Error);
    EXPECT_THROW(grid(1.0, 1).validate(), Error);
    const auto t = grid(2.0, 5).times();
    ASSERT_EQ(t.size(), 5u);
    EXPECT_DOUBLE_EQ(t.back(), 2.0);
    EXPECT_DOUBLE_EQ(t[2], 1.0);
}

TEST(Unitary, FockPhase)
{
    const double w = 1.3;
    const HilbertSpace sp({6});
    const Operator H = w * hilbert::number(6);
    const auto tr = evolve_unitary(H, QState::basis(sp, {1}), grid(2.0, 11));
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        const cplx c = tr.states[k].vector()(1);
        EXPECT_NEAR(std::abs(c - std::exp(cplx(0.0, -w * tr.times[k]))), 0.0, 1e-12);
    }
}

TEST(Unitary, VacuumRabiOscillation)
{
    const double g = 0.05;
    const Operator H = jc(1.0, 1.0, g, 5);
    const auto tr = evolve_unitary(H, QState::basis(H.space(), {1, 0}), grid(pi / g, 41));
    const Operator Pe = embed(hilbert::projector(2, 1), H.space(), 0);
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        const double c = std::cos(g * tr.times[k]);
        EXPECT_NEAR(tr.states[k].expect(Pe).real(), c * c, 1e-8);
    }
    EXPECT_LT(tr.hygiene.energy_drift, 1e-9);
}

TEST(Unitary, TimeDependentAgainstClosedForm)
{
    // H(t) = cos(t) sigma_x  ->  U = exp(-i sin(t) sigma_x)
    TimeDependentH H;
    H.static_part = Operator::zero(HilbertSpace({2}));
    H.terms.push_back({hilbert::sigma_x(), [](double t) { return cplx(std::cos(t), 0.0); }});
    const auto tr = evolve_unitary(H, QState::basis(HilbertSpace({2}), {0}), grid(6.0, 61));
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        const double s = std::sin(tr.times[k]);
        EXPECT_NEAR(std::abs(tr.states[k].vector()(0) - std::cos(s)), 0.0, 1e-8);
        EXPECT_NEAR(std::abs(tr.states[k].vector()(1) - cplx(0.0, -std::sin(s))), 0.0, 1e-8);
    }
}

TEST(Unitary, NormBudgetOverManySteps)
{
    const Operator Hs = jc(1.0, 0.9, 0.2, 6);
    TimeDependentH H;
    H.static_part = Hs;
    H.terms.push_back({embed(hilbert::sigma_x(), Hs.space(), 0), [](double t) { return cplx(0.1 * std::cos(2.0 * t), 0.0); }});
    const auto tr = evolve_unitary(H, QState::basis(Hs.space(), {1, 0}), grid(20.0, 1001));
    EXPECT_LT(tr.hygiene.norm_drift, 1e-9);
}

TEST(Unitary, KrylovMatchesDenseExponential)
{
    const Operator H = jc(1.0, 1.2, 0.3, 40);
    Vec psi = Vec::Zero(H.dim());
    psi(3) = 1.0;
    const Vec x = krylov_expv(H, psi, 2.5);
    const Vec y = propagator(H, 2.5) * psi;
    EXPECT_LT((x - y).norm(), 1e-10);
}

TEST(Lindblad, CavityDecay)
{
    const double kappa = 0.3;
    const HilbertSpace sp({6});
    const Operator a = hilbert::destroy(6);
    const LindbladModel m{hilbert::number(6), {decay(a, kappa)}};
    const QState rho0 = QState::density(sp, QState::basis(sp, {3}).density_matrix());
    const auto tr = evolve_lindblad(m, rho0, grid(5.0, 11));
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        EXPECT_NEAR(tr.states[k].expect(hilbert::number(6)).real(), 3.0 * std::exp(-kappa * tr.times[k]), 1e-6);
    }
    EXPECT_LT(tr.hygiene.trace_drift, 1e-9);
    EXPECT_LT(tr.hygiene.hermiticity, 1e-10);
    EXPECT_GT(tr.hygiene.min_eigenvalue, -1e-6);
}

TEST(Lindblad, ThermalBathDetailedBalance)
{
    const double gamma = 0.5, nth = 0.4;
    const std::size_t n = 25;
    const Operator b = hilbert::destroy(n);
    const LindbladModel m{hilbert::number(n), {decay(b, gamma * (nth + 1.0)), decay(b.adjoint(), gamma * nth)}};
    EXPECT_NEAR(steady_state(m).expect(hilbert::number(n)).real(), nth, 1e-6);
    // Long evolution reaches the same occupation.
    const auto tr = evolve_lindblad(m, QState::density(HilbertSpace({n}), QState::basis(HilbertSpace({n}), {0}).density_matrix()),
                                    grid(60.0, 3, 1e-10));
    EXPECT_NEAR(tr.states.back().expect(hilbert::number(n)).real(), nth, 1e-6);
}

TEST(Lindblad, GeneratorPreservesTrace)
{
    const std::size_t n = 5;
    const Operator a = hilbert::destroy(n);
    const cplx M = std::polar(0.3, 0.7);
    const LindbladModel m{hilbert::number(n),
                          {decay(a, 0.2), Channel{a, -0.2 * M, ChannelKind::TwoPhoton, ""},
                           Channel{a.adjoint(), -0.2 * std::conj(M), ChannelKind::TwoPhoton, ""}}};
    EXPECT_LT(trace_preservation_error(m), 1e-12);
}

TEST(Steady, PureDecayGivesVacuum)
{
    const Operator a = hilbert::destroy(8);
    const QState rho = steady_state(LindbladModel{hilbert::number(8), {decay(a, 1.0)}});
    EXPECT_NEAR(rho.matrix()(0, 0).real(), 1.0, 1e-10);
}

TEST(Steady, DrivenCavityIsCoherent)
{
    const double eps = 0.2, kappa = 0.5;
    const std::size_t n = 30;
    const Operator a = hilbert::destroy(n);
    const LindbladModel m{eps * (a + a.adjoint()), {decay(a, kappa)}};
    const QState rho = steady_state(m);
    const cplx alpha = cplx(0.0, -2.0 * eps / kappa);
    EXPECT_LT(std::abs(rho.expect(a) - alpha), 1e-8);
    EXPECT_NEAR(rho.expect(hilbert::number(n)).real(), std::norm(alpha), 1e-8);
    EXPECT_LT(steady_state_residual(m, rho), 1e-10);
}

TEST(Steady, TwoPhotonCorrelatedBath)
{
    // d<a^2>/dt = -(kappa + 2 i w) <a^2> - w2 for a weight-w2 channel L'(a^dag);
    // the L'(a) channel does not feed <a^2>, and neither feeds <a^dag a>.
    const double kappa = 0.4, w = 1.0, r = 0.3;
    const double N = std::sinh(r) * std::sinh(r);
    const cplx M = std::polar(std::cosh(r) * std::sinh(r), 0.5);
    const std::size_t n = 30;
    const Operator a = hilbert::destroy(n);
    const cplx w2 = -kappa * std::conj(M);
    const LindbladModel m{w * hilbert::number(n),
                          {decay(a, kappa * (N + 1.0)), decay(a.adjoint(), kappa * N),
                           Channel{a, -kappa * M, ChannelKind::TwoPhoton, ""},
                           Channel{a.adjoint(), w2, ChannelKind::TwoPhoton, ""}}};
    const QState rho = steady_state(m);
    EXPECT_LT(std::abs(rho.expect(a * a) - (-w2 / cplx(kappa, 2.0 * w))), 1e-8);
    EXPECT_NEAR(rho.expect(hilbert::number(n)).real(), N, 1e-8);
}

TEST(Steady, ClosedSystemIsNotUnique)
{
    try {
        steady_state(LindbladModel{hilbert::number(4), {}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonuniqueSteadyStateError);
    }
}

TEST(Fidelity, Basics)
{
    const HilbertSpace sp({30});
    const QState zero = QState::basis(sp, {0});
    const QState one = QState::basis(sp, {1});
    EXPECT_NEAR(fidelity(zero, zero), 1.0, 1e-14);
    EXPECT_NEAR(fidelity(zero, one), 0.0, 1e-14);
    const QState coh = QState::normalized_ket(sp, hilbert::displace(30, 1.0).dense().col(0));
    EXPECT_NEAR(fidelity(zero, coh), std::exp(-1.0), 1e-10);
}

TEST(Fidelity, UhlmannForCommutingStates)
{
    const HilbertSpace sp({3});
    Dense r = Dense::Zero(3, 3), s = Dense::Zero(3, 3);
    r.diagonal() << 0.5, 0.3, 0.2;
    s.diagonal() << 0.2, 0.2, 0.6;
    double bc = 0.0;
    for (int k = 0; k < 3; ++k) bc += std::sqrt(r(k, k).real() * s(k, k).real());
    EXPECT_NEAR(fidelity(QState::density(sp, r), QState::density(sp, s)), bc * bc, 1e-10);
}

TEST(Sweep, ExactCrossingWithoutCoupling)
{
    SweepSpec spec{"wq", {}, 3};
    for (int k = 0; k <= 20; ++k) spec.values.push_back(0.5 + 0.05 * k);
    const ResultTable t = eigen_sweep(spec, [](double wq) { return jc(1.0, wq, 0.0, 4); });
    // levels 1 and 2 are |g,1> and |e,0>, which cross at wq = 1
    const auto& l1 = t.column("level_1");
    const auto& l2 = t.column("level_2");
    double gap = 1.0;
    for (std::size_t k = 0; k < l1.size(); ++k) gap = std::min(gap, std::abs(l1[k] - l2[k]));
    EXPECT_LT(gap, 1e-12);
    // tracking follows the straight lines through the crossing
    for (std::size_t k = 1; k + 1 < l1.size(); ++k) {
        EXPECT_NEAR(l1[k + 1] - 2.0 * l1[k] + l1[k - 1], 0.0, 1e-12);
        EXPECT_NEAR(l2[k + 1] - 2.0 * l2[k] + l2[k - 1], 0.0, 1e-12);
    }
    EXPECT_LT(std::stod(t.metadata.at("max_permutation_defect")), 1e-6);
}

TEST(Sweep, Continuity)
{
    SweepSpec spec{"wq", {}, 4};
    for (int k = 0; k <= 40; ++k) spec.values.push_back(0.6 + 0.02 * k);
    const ResultTable t = eigen_sweep(spec, [](double wq) { return jc(1.0, wq, 0.02, 5); });
    for (std::size_t c = 1; c < t.names.size(); ++c) {
        const auto& v = t.columns[c];
        for (std::size_t k = 1; k + 1 < v.size(); ++k) {
            const double slope = std::max({std::abs(v[k + 1] - v[k]), std::abs(v[k] - v[k - 1]), 1e-3});
            EXPECT_LT(std::abs(v[k + 1] - v[k]), 10.0 * slope);
        }
    }
}

TEST(Sweep, ParallelIsDeterministic)
{
    SweepSpec spec{"g", {}, 4};
    for (int k = 0; k < 16; ++k) spec.values.push_back(0.05 * k);
    auto build = [](double g) { return jc(1.0, 1.0, g, 8); };
    const ResultTable a = eigen_sweep(spec, build, 1);
    const ResultTable b = eigen_sweep(spec, build, 4);
    EXPECT_EQ(a.columns, b.columns);
}

TEST(Crossing, TwoLevelGap)
{
    const double g = 0.1;
    SweepSpec spec{"x", {}, 2};
    for (int k = 0; k <= 40; ++k) spec.values.push_back(-1.0 + 0.05 * k + 0.013);
    const ResultTable t = eigen_sweep(spec, [g](double x) {
        return (x / 2.0) * hilbert::sigma_z() + g * hilbert::sigma_x();
    });
    const Crossing c = avoided_crossing(t, 0, 1);
    EXPECT_NEAR(c.min_gap, 2.0 * g, 1e-4);
    EXPECT_NEAR(c.location, 0.0, 1e-3);
}

TEST(Crossing, NotBracketed)
{
    SweepSpec spec{"x", {0.0, 0.1, 0.2, 0.3}, 2};
    const ResultTable t = eigen_sweep(spec, [](double x) { return (1.0 + x) * hilbert::sigma_z(); });
    try {
        avoided_crossing(t, 0, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotBracketedError);
    }
}

TEST(Table, Validation)
{
    ResultTable t;
    t.add_column("x", {1.0, 2.0});
    EXPECT_THROW(t.add_column("y", {1.0}), Error);
    t.errors = {"", "boom"};
    EXPECT_TRUE(t.has_errors());
    EXPECT_NO_THROW(t.validate());
}

TEST(ParallelFor, VisitsEveryIndexOnce)
{
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 8, [&](std::size_t k) { hits[k] += 1; });
    for (int h : hits) EXPECT_EQ(h, 1);
}
