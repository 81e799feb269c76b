#pragma once

#include <optional>
#include <vector>

#include "usc/dynamics.hpp"
#include "usc/hilbert.hpp"

// Adiabatic elimination and the closed-form catalog of single-drive
// nonlinear processes.
namespace usc::effective {

using hilbert::HilbertSpace;
using hilbert::Operator;

// Rows/columns `indices` of H as an operator on a single flat space.
Operator restrict(const Operator& H, const std::vector<std::size_t>& indices);

// Basis states reachable from the seeds through nonzero off-diagonal elements
// of H in at most `depth` steps, seeds excluded, in increasing order.
std::vector<std::size_t> intermediate_manifold(const Operator& H, const std::vector<std::size_t>& seeds,
                                               std::size_t depth = 1);

// Second-order effective Hamiltonian on the slow states with symmetric
// denominators. energies are the bare (diagonal) energies of all basis
// states, V the coupling. First-order elements of V inside the slow block are
// kept. The result lives on a flat space ordered like `slow`.
Operator eliminate_schrieffer_wolff(const std::vector<double>& energies, const Operator& V,
                                    const std::vector<std::size_t>& slow);

struct EliminationProblem {
    Operator H;
    std::vector<std::size_t> slow;
    // Defaults to the mean of the slow diagonal energies.
    std::optional<double> E0;

    void validate() const;
};

// H_A + H_AB (E0 - H_B)^{-1} H_AB^dag. Warns when the clustering ratio
// min|E_A - E_B| / max|H_AB| is below 10.
Operator eliminate_resolvent(const EliminationProblem& p);

struct DressedQubit {
    double Omega = 0.0;
    double Delta_sigma = 0.0;
    double theta = 0.0;
    double R = 0.0;
    double xi = 0.0;
    // In the bare (g, e) basis; plus is the upper eigenstate.
    Vec plus, minus;
    // sigma^- = c_minus sigma~^- + c_plus sigma~^+ + c_z sigma~_z
    double c_minus = 0.0;
    double c_plus = 0.0;
    double c_z = 0.0;
};

// Eigenbasis of Delta_sigma sigma^+ sigma^- + Omega (sigma^+ + sigma^-).
// theta = atan2(Delta_sigma / 2 + R, Omega), which lies in [0, pi/2] for
// Omega >= 0.
DressedQubit dress_qubit(double Omega, double Delta_sigma);

// Dressed-basis models: the dressed qubit is stored with |-> at index 0 and
// |+> at index 1, so sigma_minus() = |-><+| and sigma_z() = |+><+| - |-><-|.
// One qubit and two modes on (qubit, a1, a2):
// D1 n1 + D2 n2 + R sz + g [(s^2 sm - c^2 sp + s c sz)(a1^dag + a2^dag) + h.c.].
Operator h_dressed_two_mode(double g, double R, double theta, double Delta1, double Delta2, std::size_t cutoff);
// Two qubits and one mode on (q1, q2, a).
Operator h_dressed_two_qubit(double g, double R, double theta, double Delta_a, std::size_t cutoff);

// The same systems in the frame of the drive with bare qubits; their spectra
// equal the dressed ones shifted by Delta_sigma / 2 per qubit.
Operator h_driven_two_mode(double g, double Omega, double Delta_sigma, double Delta1, double Delta2,
                           std::size_t cutoff);
Operator h_driven_two_qubit(double g, double Omega, double Delta_sigma, double Delta_a, std::size_t cutoff);

struct EffectiveResult {
    cplx g_eff{0.0, 0.0};
    std::vector<double> lamb_shifts;
    // dispersive[k * atoms + j] couples mode k and atom j.
    std::vector<double> dispersive;
    double delta_resonance = 0.0;
    double alpha_shift = 0.0;
    // Nominal detunings (before the delta correction) of the swept mode(s).
    std::vector<double> detunings;
    // sqrt of the falling factorials of the photon numbers.
    double fock_factor = 1.0;
    // For second_quantized_fit: whether the diagonal shifts were fixed uniquely.
    bool shifts_determined = true;
};

// |+, n, m> <-> |-, n+1, m+1| with D1 = 2 f R (+ delta), D2 = 2 (1 - f) R.
EffectiveResult example_I_two_photon(double g, double R, double theta, double f, int n, int m);
// |+, n, m+1> <-> |-, n+1, m> with D1 = 2 f R (+ delta), D2 = 2 (f - 1) R.
EffectiveResult example_II_frequency_conversion(double g, double R, double theta, double f, int n, int m);
// |-, -, n+1> <-> |+, +, n> with D_a = 4 R (+ delta).
EffectiveResult example_III_two_atoms_one_photon(double g, double R, double theta, int n);

enum class Example { I, II, III };

struct ExampleCrossing {
    EffectiveResult closed_form;
    dynamics::Crossing crossing;
    // Swept detuning at which the closed form predicts the crossing.
    double predicted_location = 0.0;
    double predicted_splitting = 0.0;
    std::size_t index_i = 0;
    std::size_t index_f = 0;
};

// Minimum over x in [lo, hi] of the gap between the two eigenstates of
// build(x) with the largest weight on span{|i>, |f>} (Brent minimization).
dynamics::Crossing resonant_splitting(const std::function<Operator(double)>& build, std::size_t index_i,
                                      std::size_t index_f, double lo, double hi);

// Locates the avoided crossing of the full dressed model around the closed
// form prediction. f is ignored for Example III.
ExampleCrossing example_full_crossing(Example which, double g, double R, double theta, double f, int n, int m,
                                      std::size_t cutoff = 6);

struct FitBlock {
    // H_eff - H_A over (|i>, |f>).
    Eigen::Matrix2cd correction;
    std::vector<int> n_i, n_f;   // photons per cavity
    std::vector<int> s_i, s_f;   // +1 or -1 per atom
};

// Solves for chi_{k,j}, lambda_j, alpha and g_eff in
// diag = sum chi n s + sum s lambda + alpha, offdiag = g_eff * prod sqrt((max n)_{|dn|}).
// Throws not-representable-error when the relative residual exceeds tol.
EffectiveResult second_quantized_fit(const std::vector<FitBlock>& blocks, double tol = 1e-8);

} // namespace usc::effective
