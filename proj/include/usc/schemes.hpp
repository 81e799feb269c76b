#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "usc/dynamics.hpp"
#include "usc/effective.hpp"
#include "usc/hilbert.hpp"
#include "usc/models.hpp"

// Simulation protocols: driven physical models, their effective
// (renormalized) models, and the frame maps that relate the two.
namespace usc::schemes {

using dynamics::TimeDependentH;
using hilbert::HilbertSpace;
using hilbert::Operator;
using models::JcParams;

// psi_eff(t) = W(t) psi_full(t). from_effective applies W(t)^dag, which is
// the unwinding needed to read effective-frame quantities in the lab.
struct FrameMap {
    std::string description;
    std::function<Dense(double)> W;

    Vec to_effective(const Vec& psi, double t) const;
    Vec from_effective(const Vec& psi, double t) const;
};

// ---------------------------------------------------------------- Raman

struct RamanParams {
    double g_s = 0.0, g_r = 0.0;
    double Omega_s = 0.0, Omega_r = 0.0;
    double Delta_s = 0.0, Delta_r = 0.0;
    double delta_c = 0.0, Delta_1 = 0.0;
    std::size_t N = 1;

    void validate() const;
};

struct RamanCouplings {
    double lambda_s = 0.0;
    double lambda_r = 0.0;
    double Delta_c = 0.0;
    double Delta_0 = 0.0;
    double chi = 0.0;
};

struct RamanEffective {
    // Delta_c n + Delta_0 S_z + chi n S_z + lambda_r (a S+ + h.c.) + lambda_s (a^dag S+ + h.c.)
    // on (collective spin of N atoms, cavity).
    Operator H_eff_full;
    // Delta_c n + Delta_0 S_z + lambda (a + a^dag)(S+ + S-) with lambda the
    // mean of lambda_s and lambda_r.
    Operator H_dicke;
    RamanCouplings couplings;
};

RamanEffective raman_effective(const RamanParams& p, std::size_t cutoff);

// g_r = g_s, Omega_r = Omega_s, Delta_r = Delta_s: chi = 0 and lambda_s = lambda_r.
RamanParams raman_symmetric(double g, double Omega, double Delta, double delta_c, double Delta_1, std::size_t N = 1);

// Rotating-frame four-level model H_R0 + V for one atom on (atom, cavity),
// atom levels ordered |0>, |1>, |s>, |r>.
Operator h_raman_four_level(const RamanParams& p, std::size_t cutoff);

// ------------------------------------------------------------- two tone

struct TwoToneParams {
    double Omega_1 = 0.0, Omega_2 = 0.0;
    double omega_1 = 0.0, omega_2 = 0.0;
    JcParams base;

    void validate() const;
};

struct TwoTone {
    // JC plus both drives in the frame rotating at omega_1 (cavity and qubit).
    TimeDependentH H_lab_frame;
    // (omega_cav - omega_1) n - (Omega_2 / 2) sigma_z + (g / 2)(a + a^dag) sigma_x
    Operator H_eff;
    double omega_eff = 0.0;
    double qubit_eff = 0.0;
    double g_eff = 0.0;
    // W(t) = exp(i Omega_1 sigma_x t) on the qubit.
    FrameMap frame;
    double omega_rot = 0.0;
};

TwoTone two_tone_scheme(const TwoToneParams& p, std::size_t cutoff);

// ------------------------------------------------------------------- ion

enum class Sideband { First, Second };

struct IonDriveParams {
    double eta = 0.0;
    double Omega = 0.0;
    double delta_r = 0.0, delta_b = 0.0;
    double omega_mot = 1.0;
    double omega_q = 0.0;
    Sideband order = Sideband::First;

    void validate() const;
};

struct IonEffective {
    Operator H_eff;
    double omega_eff_mode = 0.0;
    double omega_eff_qubit = 0.0;
    double g_eff = 0.0;
};

// First: (d_b - d_r)/2 n + (d_r + d_b)/4 sz + (eta Omega / 2) i(s+ - s-)(a + a^dag).
// Second: (d_b - d_r)/4 n + (d_r + d_b)/4 sz - (eta^2 Omega / 4) sx (a^2 + a^dag2).
IonEffective ion_bichromatic(const IonDriveParams& p, std::size_t cutoff);

struct IonFull {
    // nu n + sum_{r,b} (Omega/2)[exp(i eta (a + a^dag)) s+ e^{i(omega_q - omega_n) t} + h.c.],
    // qubit in its interaction picture, drives at omega_q +- k nu -+ delta.
    TimeDependentH H;
    FrameMap frame;
};

IonFull ion_full_model(const IonDriveParams& p, std::size_t cutoff);

// eta sqrt(mean_n) < 0.3
bool lamb_dicke_ok(double eta, double mean_n);

// -------------------------------------------------------- single drive

struct DressedProcess {
    std::string name;
    double resonance = 0.0;   // Delta_a at which the process is resonant
    double detuning = 0.0;    // Delta_a - resonance
    double g_eff = 0.0;
};

struct SingleDriveDressed {
    effective::DressedQubit qubit;
    // Dressed basis, Delta_sigma/2 per atom dropped.
    Operator H_dressed;
    // Bare basis in the drive frame.
    Operator H_driven;
    // Sorted by |detuning|.
    std::vector<DressedProcess> resonances;
};

SingleDriveDressed single_drive_dressed(const JcParams& p, double Omega, double Delta_a, double Delta_sigma,
                                        std::size_t n_atoms, std::size_t cutoff);

// --------------------------------------------------------------- Trotter

enum class TrotterOrder { First, Symmetric };

struct TrotterPlan {
    double omega_Rc = 0.0, omega_Rq = 0.0, g_R = 0.0;
    double omega_q1 = 0.0, omega_q2 = 0.0;
    std::size_t steps = 1;
    TrotterOrder order = TrotterOrder::First;

    void validate() const;
};

struct DigitalTrotter {
    Operator U_digital;
    Operator U_target;
    double trotter_error = 0.0;
    // Drive-frame frequency and the two tuned qubit frequencies of the device.
    double omega_RF = 0.0;
    double qubit_step1 = 0.0;
    double qubit_step2 = 0.0;
};

// JC steps and bit-flipped (anti-JC) steps on (qubit, cavity); the device
// coupling base.g must equal plan.g_R.
DigitalTrotter digital_trotter(const TrotterPlan& plan, const JcParams& base, double t, std::size_t cutoff);

// N qubits flipped in parallel on (q_1..q_N, cavity).
DigitalTrotter dicke_trotter(const TrotterPlan& plan, const JcParams& base, std::size_t N, double t,
                             std::size_t cutoff);

// ------------------------------------------------------------- bosonic

struct ThreeWaveParams {
    double omega_a = 0.0, omega_b = 0.0;
    double chi = 0.0;
    double c_B = 0.0, c_R = 0.0;
    double delta = 0.0;

    void validate() const;
};

struct ThreeWave {
    // -delta (n_a + n_b) + G_B (a^dag b^dag + ab) + G_R (a^dag b + a b^dag) on (a, b).
    Operator H_eff;
    double G_B = 0.0;
    double G_R = 0.0;
};

ThreeWave three_wave_hopfield(const ThreeWaveParams& p, std::size_t n_a, std::size_t n_b);

struct ThreeWaveFull {
    // Stiff-pump three-wave mixing in the frame where a and b rotate at
    // omega_{a,b} + delta; pump tones at omega_B = omega_a + omega_b + 2 delta
    // and omega_R = omega_a - omega_b.
    TimeDependentH H;
};

ThreeWaveFull three_wave_full(const ThreeWaveParams& p, std::size_t n_a, std::size_t n_b);

struct CrossKerrOptomech {
    // Delta_b db^dag db - beta_b chi n_a (db + db^dag), optionally + chi n_a db^dag db.
    Operator H_sim;
    double g_om_eff = 0.0;
    double ratio = 0.0;
    // chi beta_b^2: frequency shift of mode a absorbed into its frame.
    double omega_a_shift = 0.0;
};

CrossKerrOptomech cross_kerr_optomech(double chi, double beta_b, double Delta_b, std::size_t n_a, std::size_t n_b,
                                      bool residual_kerr = false);

// Driven cross-Kerr model in the drive frame, Delta_b b^dag b + chi n_a b^dag b
// + Delta_b beta_b (b + b^dag), whose undepleted steady amplitude is b = -beta_b.
Operator cross_kerr_full(double chi, double beta_b, double Delta_b, std::size_t n_a, std::size_t n_b);

// ---------------------------------------------------------- parity chain

enum class ParityChain { C, F };

// Chain C holds A_n (|g,n>) for even n and B_n (|e,n>) for odd n; chain F the
// complement. Evolution is exact (tridiagonal eigendecomposition).
Vec parity_chain_propagate(double omega_cav, double omega_q, double g, ParityChain chain, std::size_t N,
                           const Vec& psi0, double t);

// Basis index in h_rabi's (qubit, cavity) space of chain site n.
std::size_t parity_chain_site_index(ParityChain chain, std::size_t n, std::size_t cutoff);

// ------------------------------------------------------------ realization

enum class RealizationKind { ColdAtoms, QuantumDot };

struct Realization {
    double omega_cav_eff = 0.0;
    double omega_q_eff = 0.0;
    double g_eff = 0.0;
    double ratio = 0.0;
    // Quantum dot: delta' = 0 (Feshbach-balanced) so no static sigma_x bias remains.
    bool balanced = false;
};

// SI inputs: mass [kg], omega0 [rad/s], k0 [1/m], V [J].
Realization cold_atom_map(double mass, double omega0, double k0, double V);
// SI inputs: Omega_d, omega_k [rad/s], volume [m^3], g_cc, g_cd [J m^3], delta_prime [rad/s].
Realization quantum_dot_map(double Omega_d, double omega_k, double volume, double g_cc, double g_cd,
                            double delta_prime);
// Keyed-input form used by the CLI; unknown or missing keys are shape errors.
Realization realization_maps(RealizationKind kind, const std::map<std::string, double>& inputs);

inline constexpr double hbar_si = 1.054571817e-34;

} // namespace usc::schemes
