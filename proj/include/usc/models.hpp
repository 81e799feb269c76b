#pragma once

#include <optional>
#include <vector>

#include "usc/dynamics.hpp"
#include "usc/hilbert.hpp"

// Model builders. Spins come first in every composite space, modes follow in
// the order of the parameter record.
namespace usc::models {

using dynamics::Channel;
using hilbert::HilbertSpace;
using hilbert::Operator;

struct OptomechParams {
    double g0 = 0.0;
    double omega_m = 1.0;
    double omega_cav = 0.0;
    double kappa = 0.0;
    double gamma_m = 0.0;
    double n_th = 0.0;
    cplx drive{0.0, 0.0};
    double detuning = 0.0;

    void validate() const;
};

// x_zpf = 1 / sqrt(2 m_eff omega_m); G = g0 / x_zpf.
double zero_point_fluctuation(double m_eff, double omega_m);

// omega_cav a^dag a + omega_m b^dag b - g0 a^dag a (b + b^dag) on (a, b).
Operator h_optomech(const OptomechParams& p, std::size_t n_cav, std::size_t n_mech);
// kappa L(a) + gamma_m (n_th + 1) L(b) + gamma_m n_th L(b^dag) on (a, b).
std::vector<Channel> optomech_channels(const OptomechParams& p, std::size_t n_cav, std::size_t n_mech);

struct Linearized {
    cplx alpha;
    cplx beta;
    double detuning_eff = 0.0;
    double g_c = 0.0;
    double theta = 0.0;
    std::size_t iterations = 0;
    Operator H_lin;
};

// Classical fixed point in the frame of the drive, solved by damped
// iteration; H_lin = D' da^dag da + omega_m db^dag db
//   - g_c (e^{-i theta} da + e^{i theta} da^dag)(db + db^dag).
Linearized linearize_optomech(const OptomechParams& p, std::size_t n_cav = 8, std::size_t n_mech = 8);

struct DoubleCavityParams {
    double J = 0.0;
    double zeta = 0.0;
    double omega_0 = 0.0;
    int n0 = 1;
    double delta = 0.0;

    void validate() const;
};

struct DoubleCavity {
    Operator H_full;   // bare modes (a, c, b)
    Operator H_dc;     // normal modes (a_plus, a_minus, b)
    Vec one_plus, one_minus, two_plus, two_minus, two_zero;
};

// a_plus is the normal mode at omega_cav + |J|. The resonant term is
// (g0/2)(a_plus a_minus^dag b^dag + h.c.).
DoubleCavity h_double_cavity(const DoubleCavityParams& p, double g0, double omega_cav, double omega_m,
                             std::size_t n_photon, std::size_t n_mech);

double modulated_coupling_gM(const DoubleCavityParams& p, double g0);

struct Polaritons {
    double E_plus = 0.0;
    double E_minus = 0.0;
    bool stable = true;
};

Polaritons polariton_energies(double Delta, double omega_m, double g_c);
// Detuning in (lo, hi) with E_plus = 2 E_minus.
double polariton_two_to_one_detuning(double omega_m, double g_c, double lo, double hi);

struct JcParams {
    double omega_cav = 1.0;
    double omega_q = 1.0;
    double g = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;

    void validate() const;
    double cooperativity() const;
};

enum class GaugeChoice { SimpleRabi, Dipole, CoulombNaive, CoulombCorrected };

// Space (qubit, cavity). Dipole includes the self-energy omega_cav eta^2
// sigma_x^2, which is a constant for a two-level system. CoulombNaive uses
// g_cg = g omega_q / omega_cav and D = g_cg^2 / omega_q unless overridden.
Operator h_rabi(const JcParams& p, GaugeChoice gauge, std::size_t cutoff, std::optional<double> diamagnetic = {});
Operator h_jc(const JcParams& p, std::size_t cutoff);

enum class DickeGauge { Bare, Dipole };

// Individual qubits (sites 0..N-1), cavity last.
Operator h_dicke(double omega_cav, double omega_q, double g, std::size_t N, std::size_t cutoff,
                 DickeGauge gauge = DickeGauge::Bare);
Operator h_tavis_cummings(double omega_cav, double omega_q, double g, std::size_t N, std::size_t cutoff);

struct CollectiveSpin {
    Operator Sz, Sp, Sm;
};

// Spin N/2 in the symmetric (Dicke) basis, S_z = -N/2 first.
CollectiveSpin collective_spin(std::size_t N);
// Space (spin N/2, cavity).
Operator h_tavis_cummings_collective(double omega_cav, double omega_q, double g, std::size_t N, std::size_t cutoff);
// Linear Holstein-Primakoff boson s on (s, cavity):
// omega_cav a^dag a + omega_q (s^dag s - N/2) + sqrt(N) g (a s^dag + a^dag s).
Operator h_holstein_primakoff(double omega_cav, double omega_q, double g, std::size_t N, std::size_t n_s,
                              std::size_t cutoff);

struct DpaParams {
    double Omega_2ph = 0.0;
    double Delta_2ph = 1.0;
    double theta_2ph = 0.0;
};

struct Dpa {
    Operator H;
    double r = 0.0;
    double omega_sq = 0.0;
    bool stable = true;
};

// H = Delta a^dag a + (Omega/2)(e^{-i theta} a^2 + h.c.). For Delta <= Omega
// the frame quantities are NaN and stable is false.
Dpa h_dpa(const DpaParams& p, std::size_t cutoff);
// r and omega_sq; throws instability-error outside the stable region.
std::pair<double, double> dpa_frame(const DpaParams& p);

enum class HopfieldGauge { Bare, Dipole, Coulomb };

struct HopfieldParams {
    double omega_a = 1.0;
    double omega_b = 1.0;
    double G = 0.0;
    double G_prime = 0.0;
    HopfieldGauge gauge = HopfieldGauge::Bare;

    void validate() const;
};

Operator h_hopfield(const HopfieldParams& p, std::size_t n_a, std::size_t n_b);

struct CollectiveParams {
    std::size_t N = 1;
    double g = 0.0;
    std::vector<double> per_atom_g;
    double kappa = 0.0;
    double gamma = 0.0;

    void validate() const;
};

struct CollectiveMap {
    double g_col = 0.0;
    double C_col = 0.0;
    double hp_valid_excitation = 0.0;
};

CollectiveMap collective_map(const CollectiveParams& p);

} // namespace usc::models
