#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "usc/dynamics.hpp"
#include "usc/hilbert.hpp"

// Squeezed-frame transformations and squeezing-based amplification.
namespace usc::squeeze_amp {

using dynamics::Channel;
using dynamics::LindbladModel;
using hilbert::HilbertSpace;
using hilbert::Operator;

struct SqueezeFrame {
    double r = 0.0;
    double theta = 0.0;

    void validate() const;
    cplx xi() const { return std::polar(r, theta); }
};

struct SqueezedBathParams {
    double r_e = 0.0;
    double theta_e = 0.0;
    double kappa = 0.0;

    void validate() const;
};

// Expresses H in terms of the squeezed mode a_sq = S a S^dag at the given
// site, i.e. substitutes a = a_sq cosh r - a_sq^dag e^{i theta} sinh r. As a
// matrix this is S^dag H S with S = S(r e^{i theta}).
Operator bogoliubov(std::size_t site, const SqueezeFrame& frame, const Operator& H);

// Same map with the truncation error pushed out: build(pad) must return H
// with the squeezed site at cutoff pad; the result lives on the space with
// that site cut to `cutoff`.
Operator bogoliubov_padded(std::size_t site, const SqueezeFrame& frame,
                           const std::function<Operator(std::size_t)>& build, std::size_t cutoff, std::size_t pad);

enum class CouplingKind { Optomech, AtomRotating, AtomCounterRotating, Cooperativity };

struct Enhanced {
    double exact = 0.0;
    double asymptotic = 0.0;
};

// optomech: g0 cosh 2r (g0 e^{2r}); atom rotating: g cosh r (g e^r / 2);
// counter-rotating: -g sinh r (-g e^r / 2); cooperativity: C cosh^2 r (C e^{2r} / 4).
Enhanced enhanced_couplings(CouplingKind kind, double value, double r);

struct BathCoefficients {
    double N_sq = 0.0;
    cplx M_sq{0.0, 0.0};
};

BathCoefficients squeezed_bath_coeffs(const SqueezeFrame& frame, const SqueezedBathParams& bath);

// kappa (N+1) L(a) + kappa N L(a^dag) - kappa M L'(a) - kappa M* L'(a^dag)
// for the mode at `site` of H_sq, followed by the extra channels. Channels
// with zero weight are left out.
LindbladModel squeezed_master_equation(const SqueezeFrame& frame, const SqueezedBathParams& bath, const Operator& H_sq,
                                       std::size_t site, std::vector<Channel> extra = {});

enum class SqueezedOptomechForm { Full, Rwa, HyperRaman };

struct SqueezedOptomech {
    Operator H;
    double g_om = 0.0;
    double g_2ph = 0.0;
    // omega_sq >= 10 max(omega_m, g_2ph)
    bool rwa_valid = false;
    // |omega_m - 2 omega_sq| <= 0.1 omega_m
    bool hyper_raman_resonant = false;
};

// Cavity optomechanics in the squeezed frame on (a_sq, b):
// omega_sq n + omega_m b^dag b - g_om n (b + b^dag)
//   + (g_2ph / 2)(e^{i theta} a_sq^dag2 + e^{-i theta} a_sq^2)(b + b^dag).
// The static force -g0 sinh^2 r (b + b^dag) is left out unless requested.
// Rwa drops the two-photon term, HyperRaman keeps only its a_sq^2 b^dag part.
SqueezedOptomech h_squeezed_optomech(double omega_sq, double omega_m, double g0, const SqueezeFrame& frame,
                                     std::size_t n_cav, std::size_t n_mech,
                                     SqueezedOptomechForm form = SqueezedOptomechForm::Full,
                                     bool static_force = false);

struct SqueezedJc {
    Operator H;
    double g_rw = 0.0;
    double g_cr = 0.0;
    // |g_cr| / (omega_sq + Delta_q) <= 0.1
    bool rwa_valid = false;
};

// Atom-cavity coupling in the squeezed frame on (qubit, a_sq):
// omega_sq n + Delta_q sigma_z / 2 + g_rw (a_sq sigma+ + h.c.)
//   + g_cr (e^{i theta} a_sq^dag sigma+ + h.c.).
SqueezedJc h_squeezed_jc(double omega_sq, double Delta_q, double g, const SqueezeFrame& frame, std::size_t cutoff,
                         bool rwa = false);

struct KerrAmpParams {
    double g = 0.0;
    double theta1 = 0.0;
    bool two_mode = false;
};

struct KerrGate {
    std::string name;
    double parameter = 0.0;
};

struct KerrAmplification {
    double theta2 = 0.0;
    double g_gamma = 0.0;
    double kappa_amp = 0.0;
    double kappa_small_angle = 0.0;
    // In application order (the first gate acts first).
    std::vector<KerrGate> circuit;
};

KerrAmplification kerr_amplification(const KerrAmpParams& p);

struct KerrVerification {
    KerrAmplification amp;
    Operator U_circuit;
    Operator U_target;
    double residual = 0.0;
};

// Composes the circuit on atom (x) b (single mode) or atom (x) b (x) c (two
// mode) with each mode cut to `cutoff`. Squeezing gates act in a padded Fock
// space of size `pad` so the result is the restriction of the exact circuit.
// The target is exp(i 2 g_gamma n_a n_b) (single mode) or
// exp(i 2 g_gamma n_a (n_b + n_c)) (two mode).
KerrVerification verify_kerr_circuit(const KerrAmpParams& p, std::size_t cutoff = 12, std::size_t pad = 400);

enum class DisplacementMode { PhaseSensitive, PhaseInsensitive };

// Phase sensitive: [cosh r + e^{i(theta - 2 arg alpha)} sinh r] alpha.
// Phase insensitive: cosh(r) alpha.
cplx displacement_amplification(cplx alpha, double r, DisplacementMode mode, double theta_2ph = 0.0);

// The split-displacement sequence S^dag(-r) D(alpha/2) S(-r) S^dag(r) D(alpha/2) S(r)
// built in a padded space of size pad and restricted to `dim` levels. It
// equals D(cosh(r) alpha) times the global phase e^{i sinh(2r) Im(alpha^2) / 4}.
Dense split_displacement(std::size_t dim, cplx alpha, double r, std::size_t pad);

struct TrotterAmplification {
    Operator U_protocol;
    Operator U_target;
    double error = 0.0;
};

// U_protocol = prod over N_steps of S^dag(-r) U0 S(-r) S^dag(r) U0 S(r) with
// U0 = exp(-i H_int t / 2N) and S acting on `site`. U_target =
// exp(-i cosh(r) H_int t). The error is the max-norm difference over columns
// whose occupation of `site` is below probe_levels (0 means all columns).
TrotterAmplification trotterized_hamiltonian_amplification(const Operator& H_int, std::size_t site, double r,
                                                           std::size_t N_steps, double t,
                                                           std::size_t probe_levels = 0);

struct DispersiveParams {
    double g = 0.0;
    double Delta_q = 0.0;
    double omega_sq = 0.0;
    double r = 0.0;
    std::optional<double> chi_anh;
};

struct DispersiveShift {
    double chi = 0.0;
    double chi_trans = 0.0;
};

// chi_trans equals chi when no anharmonicity is given.
DispersiveShift dispersive_shift(const DispersiveParams& p);

} // namespace usc::squeeze_amp
