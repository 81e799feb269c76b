#include "usc/effective.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <boost/math/tools/minima.hpp>

namespace usc::effective {

namespace {

void require_fraction(double f)
{
    if (!(f > 0.0 && f < 1.0)) throw Error(ErrorKind::DomainError, "detuning fraction f must lie in (0, 1)");
}

void require_process(double g, double R, int n, int m)
{
    if (!(R > 0.0)) throw Error(ErrorKind::DomainError, "Rabi frequency must be positive");
    if (!std::isfinite(g)) throw Error(ErrorKind::DomainError, "coupling must be finite");
    if (n < 0 || m < 0) throw Error(ErrorKind::DomainError, "photon numbers must be non-negative");
}

// Resonances at +-R and +-2R open competing processes; flag detunings closer
// than ten effective couplings.
void guard_band(const std::vector<double>& detunings, double R, double g_eff)
{
    const double band = 10.0 * std::abs(g_eff);
    for (double d : detunings) {
        for (double x : {R, -R, 2.0 * R, -2.0 * R}) {
            if (std::abs(d - x) < band) {
                std::ostringstream msg;
                msg << "detuning " << d << " lies within 10 g_eff of the excluded value " << x;
                warn(msg.str());
            }
        }
    }
}

// Second-order shifts of one dressed qubit coupled to modes with detunings D_k:
// shift(s, n) = s sum_k chi_k n_k + s lambda + alpha_k contributions.
struct SingleQubitShifts {
    std::vector<double> chi;
    double lambda = 0.0;
    double alpha = 0.0;
};

SingleQubitShifts qubit_shifts(double g, double R, double theta, const std::vector<double>& D)
{
    const double c = std::cos(theta), s = std::sin(theta);
    const double c4 = std::pow(c, 4), s4 = std::pow(s, 4), g2 = g * g;
    SingleQubitShifts out;
    double up = 0.0, down = 0.0, flat = 0.0;
    for (double d : D) {
        out.chi.push_back(g2 * (c4 / (2.0 * R + d) + s4 / (2.0 * R - d)));
        up += 1.0 / (2.0 * R + d);
        down += 1.0 / (2.0 * R - d);
        flat += 1.0 / d;
    }
    out.lambda = 0.5 * g2 * (c4 * up + s4 * down);
    out.alpha = 0.5 * g2 * (s4 * down - c4 * up) - g2 * s * s * c * c * flat;
    return out;
}

double fock(int n_max, int change) { return std::sqrt(std::tgamma(n_max + 1.0) / std::tgamma(n_max - change + 1.0)); }

} // namespace

EffectiveResult example_I_two_photon(double g, double R, double theta, double f, int n, int m)
{
    require_fraction(f);
    require_process(g, R, n, m);
    const double c = std::cos(theta), s = std::sin(theta);
    EffectiveResult out;
    out.detunings = {2.0 * f * R, 2.0 * (1.0 - f) * R};
    out.g_eff = g * g * c * s * s * s / (R * f * (1.0 - f));
    const SingleQubitShifts sh = qubit_shifts(g, R, theta, out.detunings);
    out.lamb_shifts = {sh.lambda};
    out.dispersive = sh.chi;
    out.alpha_shift = sh.alpha;
    out.delta_resonance = 2.0 * sh.lambda + sh.chi[0] * (2 * n + 1) + sh.chi[1] * (2 * m + 1);
    out.fock_factor = fock(n + 1, 1) * fock(m + 1, 1);
    guard_band(out.detunings, R, std::abs(out.g_eff));
    return out;
}

EffectiveResult example_II_frequency_conversion(double g, double R, double theta, double f, int n, int m)
{
    require_fraction(f);
    require_process(g, R, n, m);
    const double c = std::cos(theta), s = std::sin(theta);
    EffectiveResult out;
    out.detunings = {2.0 * f * R, 2.0 * (f - 1.0) * R};
    out.g_eff = g * g * ((f - 1.0) * c * c * c * s + f * c * s * s * s) / (R * f * (f - 1.0));
    const SingleQubitShifts sh = qubit_shifts(g, R, theta, out.detunings);
    out.lamb_shifts = {sh.lambda};
    out.dispersive = sh.chi;
    out.alpha_shift = sh.alpha;
    out.delta_resonance = 2.0 * sh.lambda + sh.chi[0] * (2 * n + 1) + sh.chi[1] * (2 * m + 1);
    out.fock_factor = fock(n + 1, 1) * fock(m + 1, 1);
    guard_band(out.detunings, R, std::abs(out.g_eff));
    return out;
}

EffectiveResult example_III_two_atoms_one_photon(double g, double R, double theta, int n)
{
    require_process(g, R, n, 0);
    const double c = std::cos(theta), s = std::sin(theta);
    EffectiveResult out;
    const double Da = 4.0 * R;
    out.detunings = {Da};
    out.g_eff = g * g * g / (3.0 * R * R) * (std::pow(c * s, 3) + 3.0 * c * std::pow(s, 5));
    const SingleQubitShifts sh = qubit_shifts(g, R, theta, out.detunings);
    out.lamb_shifts = {sh.lambda, sh.lambda};
    out.dispersive = {sh.chi[0], sh.chi[0]};
    // Both atoms share the virtual photon of the sigma_z coupling: (s1 + s2)^2 = 4 on |i> and |f>.
    out.alpha_shift = 2.0 * (sh.alpha + g * g * s * s * c * c / Da) - 4.0 * g * g * s * s * c * c / Da;
    out.delta_resonance = 4.0 * (n + 1) * sh.chi[0];
    out.fock_factor = fock(n + 1, 1);
    guard_band(out.detunings, R, std::abs(out.g_eff));
    return out;
}

dynamics::Crossing resonant_splitting(const std::function<Operator(double)>& build, std::size_t index_i,
                                      std::size_t index_f, double lo, double hi)
{
    if (!(hi > lo)) throw Error(ErrorKind::NotBracketedError, "splitting search needs lo < hi");
    auto gap = [&](double x) {
        const Operator H = build(x);
        const std::size_t n = H.space().total();
        if (index_i >= n || index_f >= n) throw Error(ErrorKind::ShapeError, "crossing state index out of range");
        const Eigen::SelfAdjointEigenSolver<Dense> es(H.dense());
        if (es.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceError, "eigensolver failed");
        const Dense& V = es.eigenvectors();
        std::array<Eigen::Index, 2> best{-1, -1};
        std::array<double, 2> w{-1.0, -1.0};
        for (Eigen::Index k = 0; k < V.cols(); ++k) {
            const double wk = std::norm(V(static_cast<Eigen::Index>(index_i), k)) +
                              std::norm(V(static_cast<Eigen::Index>(index_f), k));
            if (wk > w[0]) {
                w[1] = w[0];
                best[1] = best[0];
                w[0] = wk;
                best[0] = k;
            } else if (wk > w[1]) {
                w[1] = wk;
                best[1] = k;
            }
        }
        return std::abs(es.eigenvalues()(best[0]) - es.eigenvalues()(best[1]));
    };
    boost::uintmax_t iters = 200;
    const auto r = boost::math::tools::brent_find_minima(gap, lo, hi, 40, iters);
    return {r.first, r.second};
}

ExampleCrossing example_full_crossing(Example which, double g, double R, double theta, double f, int n, int m,
                                      std::size_t cutoff)
{
    ExampleCrossing out;
    std::function<Operator(double)> build;
    const auto need = static_cast<std::size_t>(std::max(n, m) + 2);
    if (cutoff < need) throw Error(ErrorKind::InvalidDimension, "cutoff too small for the requested photon numbers");
    const HilbertSpace sp({2, cutoff, cutoff});
    const HilbertSpace sp2({2, 2, cutoff});
    const auto un = static_cast<std::size_t>(n), um = static_cast<std::size_t>(m);

    switch (which) {
    case Example::I: {
        out.closed_form = example_I_two_photon(g, R, theta, f, n, m);
        const double D2 = out.closed_form.detunings[1];
        build = [=](double D1) { return h_dressed_two_mode(g, R, theta, D1, D2, cutoff); };
        out.index_i = sp.index({1, un, um});
        out.index_f = sp.index({0, un + 1, um + 1});
        break;
    }
    case Example::II: {
        out.closed_form = example_II_frequency_conversion(g, R, theta, f, n, m);
        const double D2 = out.closed_form.detunings[1];
        build = [=](double D1) { return h_dressed_two_mode(g, R, theta, D1, D2, cutoff); };
        out.index_i = sp.index({1, un, um + 1});
        out.index_f = sp.index({0, un + 1, um});
        break;
    }
    case Example::III: {
        out.closed_form = example_III_two_atoms_one_photon(g, R, theta, n);
        build = [=](double Da) { return h_dressed_two_qubit(g, R, theta, Da, cutoff); };
        out.index_i = sp2.index({0, 0, un + 1});
        out.index_f = sp2.index({1, 1, un});
        break;
    }
    }
    const EffectiveResult& cf = out.closed_form;
    out.predicted_location = cf.detunings[0] + cf.delta_resonance;
    out.predicted_splitting = 2.0 * std::abs(cf.g_eff) * cf.fock_factor;
    const double half = 3.0 * std::abs(cf.delta_resonance) + 10.0 * out.predicted_splitting;
    out.crossing = resonant_splitting(build, out.index_i, out.index_f, out.predicted_location - half,
                                      out.predicted_location + half);
    return out;
}

} // namespace usc::effective
