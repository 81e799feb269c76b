#include "usc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "usc/effective.hpp"
#include "usc/models.hpp"
#include "usc/schemes.hpp"
#include "usc/squeeze_amp.hpp"

namespace usc::cli {

using hilbert::embed;
using hilbert::HilbertSpace;
using hilbert::QState;

// ------------------------------------------------------------------ Args

double Args::operator[](const std::string& name) const
{
    auto it = numbers.find(name);
    if (it == numbers.end()) throw Error(ErrorKind::ShapeError, "no numeric parameter '" + name + "'");
    return it->second;
}

std::size_t Args::integer(const std::string& name) const
{
    const double v = (*this)[name];
    if (v < 0.0 || v != std::floor(v)) throw Error(ErrorKind::DomainError, "parameter '" + name + "' must be a count");
    return static_cast<std::size_t>(v);
}

const std::string& Args::choice(const std::string& name) const
{
    auto it = choices.find(name);
    if (it == choices.end()) throw Error(ErrorKind::ShapeError, "no choice parameter '" + name + "'");
    return it->second;
}

std::size_t Args::cutoff(const std::string& mode) const
{
    auto it = cutoffs.find(mode);
    if (it == cutoffs.end()) throw Error(ErrorKind::ShapeError, "no truncation for mode '" + mode + "'");
    return it->second;
}

Args resolve_args(const Entry& e, const ExperimentConfig& c)
{
    Args a;
    for (const auto& p : e.params) {
        if (p.type == ParamType::Choice) {
            auto it = c.choices.find(p.name);
            a.choices[p.name] = it != c.choices.end() ? it->second : p.choice;
        } else {
            auto it = c.numbers.find(p.name);
            a.numbers[p.name] = it != c.numbers.end() ? it->second : p.value;
        }
    }
    for (const auto& m : e.modes) {
        auto it = c.truncations.find(m.name);
        a.cutoffs[m.name] = it != c.truncations.end() ? it->second : m.cutoff;
    }
    for (const auto& m : e.modes) {
        if (!m.follows.empty()) a.cutoffs[m.name] = a.cutoffs.at(m.follows);
    }
    return a;
}

std::vector<Site> layout(const Entry& e, const Args& a)
{
    std::vector<Site> out;
    for (const auto& m : e.modes) {
        std::size_t dim = m.kind == ModeKind::Qubit ? 2 : a.cutoff(m.name);
        if (m.kind == ModeKind::Spin) dim = a.integer(m.dim_param) + 1;
        if (m.repeat.empty()) {
            out.push_back({m.name, m.name, m.kind, dim});
        } else {
            const std::size_t copies = a.integer(m.repeat);
            for (std::size_t k = 0; k < copies; ++k) out.push_back({m.name + std::to_string(k), m.name, m.kind, dim});
        }
    }
    return out;
}

namespace {

// ----------------------------------------------------------- spec helpers

ParamSpec real(std::string name, double v, std::string doc)
{
    ParamSpec p;
    p.name = std::move(name);
    p.value = v;
    p.doc = std::move(doc);
    return p;
}

ParamSpec count(std::string name, double v, std::string doc)
{
    ParamSpec p = real(std::move(name), v, std::move(doc));
    p.type = ParamType::Integer;
    return p;
}

ParamSpec choice(std::string name, std::string def, std::vector<std::string> options, std::string doc)
{
    ParamSpec p;
    p.name = std::move(name);
    p.type = ParamType::Choice;
    p.choice = std::move(def);
    p.choices = std::move(options);
    p.doc = std::move(doc);
    return p;
}

ModeSpec qubit(std::string name)
{
    ModeSpec m;
    m.name = std::move(name);
    m.kind = ModeKind::Qubit;
    m.cutoff = 2;
    m.fixed = true;
    return m;
}

ModeSpec qubits(std::string name, std::string repeat)
{
    ModeSpec m = qubit(std::move(name));
    m.repeat = std::move(repeat);
    return m;
}

ModeSpec boson(std::string name, std::size_t cutoff)
{
    ModeSpec m;
    m.name = std::move(name);
    m.cutoff = cutoff;
    return m;
}

ModeSpec tied(std::string name, std::string follows)
{
    ModeSpec m = boson(std::move(name), 0);
    m.follows = std::move(follows);
    return m;
}

ModeSpec spin(std::string name, std::string dim_param)
{
    ModeSpec m;
    m.name = std::move(name);
    m.kind = ModeKind::Spin;
    m.fixed = true;
    m.dim_param = std::move(dim_param);
    return m;
}

const std::vector<Task> dyn{Task::Evolve, Task::Spectrum};
const std::vector<Task> open_dyn{Task::Evolve, Task::Spectrum, Task::SteadyState};

bool nan(double x) { return std::isnan(x); }
constexpr double unset = std::numeric_limits<double>::quiet_NaN();

// ------------------------------------------------------- check helpers

struct Spectral {
    RealVec E;
    Dense V;

    explicit Spectral(const Operator& H)
    {
        Eigen::SelfAdjointEigenSolver<Dense> es(H.dense());
        E = es.eigenvalues();
        V = es.eigenvectors();
    }
    Vec apply(double t, const Vec& psi) const
    {
        Vec c = V.adjoint() * psi;
        for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::exp(cplx(0.0, -E(k) * t));
        return V * c;
    }
};

double overlap(const Vec& x, const Vec& y) { return std::norm(x.dot(y)) / (x.squaredNorm() * y.squaredNorm()); }

TimeGrid grid_or(const std::optional<TimeGrid>& g, double T, std::size_t n, double tol)
{
    if (g) return *g;
    TimeGrid d;
    d.t1 = T;
    d.n_points = n;
    d.tolerance = tol;
    return d;
}

std::vector<Vec> kets(const dynamics::Trajectory& tr)
{
    std::vector<Vec> out;
    for (const auto& s : tr.states) out.push_back(s.vector());
    return out;
}

double min_of(const std::vector<double>& v) { return v.empty() ? unset : *std::min_element(v.begin(), v.end()); }

// Upper-level population of site 0 for a (qubit, n) layout.
double upper(const Vec& psi, std::size_t n) { return psi.tail(static_cast<Eigen::Index>(n)).squaredNorm() / psi.squaredNorm(); }

Vec basis(std::size_t dim, std::size_t k)
{
    Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(k)) = 1.0;
    return v;
}

// log-log slope by least squares.
double slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    if (n < 2) return unset;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double lx = std::log(x[k]), ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

// ------------------------------------------------------------ builders

models::JcParams jc_params(const Args& a)
{
    models::JcParams p;
    p.omega_cav = a["omega_cav"];
    p.omega_q = a["omega_q"];
    p.g = a["g"];
    if (a.numbers.count("kappa")) p.kappa = a["kappa"];
    if (a.numbers.count("gamma")) p.gamma = a["gamma"];
    return p;
}

std::vector<dynamics::Channel> jc_channels(const models::JcParams& p, const HilbertSpace& sp)
{
    std::vector<dynamics::Channel> ch;
    const std::size_t n = sp.dims().back();
    if (p.kappa > 0.0) ch.push_back({embed(hilbert::destroy(n), sp, 1), p.kappa, dynamics::ChannelKind::Standard, "kappa"});
    if (p.gamma > 0.0) ch.push_back({embed(hilbert::sigma_minus(), sp, 0), p.gamma, dynamics::ChannelKind::Standard, "gamma"});
    return ch;
}

models::GaugeChoice gauge_of(const std::string& s)
{
    if (s == "dipole") return models::GaugeChoice::Dipole;
    if (s == "coulomb_naive") return models::GaugeChoice::CoulombNaive;
    if (s == "coulomb_corrected") return models::GaugeChoice::CoulombCorrected;
    return models::GaugeChoice::SimpleRabi;
}

std::vector<ParamSpec> jc_param_specs(double g)
{
    return {real("omega_cav", 1.0, "cavity frequency"), real("omega_q", 1.0, "qubit frequency"),
            real("g", g, "coupling"), real("kappa", 0.0, "cavity decay rate"), real("gamma", 0.0, "qubit decay rate")};
}

schemes::TwoToneParams two_tone_params(const Args& a)
{
    schemes::TwoToneParams p;
    p.omega_1 = a["omega_1"];
    p.Omega_1 = a["Omega_1"];
    p.Omega_2 = a["Omega_2"];
    p.omega_2 = nan(a["omega_2"]) ? p.omega_1 + 2.0 * p.Omega_1 : a["omega_2"];
    p.base.omega_cav = a["omega_cav"];
    p.base.omega_q = nan(a["omega_q"]) ? p.omega_1 : a["omega_q"];
    p.base.g = a["g"];
    return p;
}

schemes::IonDriveParams ion_params(const Args& a)
{
    schemes::IonDriveParams p;
    p.eta = a["eta"];
    p.Omega = a["Omega"];
    p.delta_r = a["delta_r"];
    p.delta_b = a["delta_b"];
    p.omega_mot = a["omega_mot"];
    p.omega_q = a["omega_q"];
    p.order = a.choice("order") == "second" ? schemes::Sideband::Second : schemes::Sideband::First;
    return p;
}

schemes::RamanParams raman_params(const Args& a)
{
    schemes::RamanParams p;
    p.g_s = a["g_s"];
    p.g_r = a["g_r"];
    p.Omega_s = a["Omega_s"];
    p.Omega_r = a["Omega_r"];
    p.Delta_s = a["Delta_s"];
    p.Delta_r = a["Delta_r"];
    p.delta_c = a["delta_c"];
    p.Delta_1 = a["Delta_1"];
    p.N = a.integer("N");
    return p;
}

schemes::ThreeWaveParams three_wave_params(const Args& a)
{
    return {a["omega_a"], a["omega_b"], a["chi"], a["c_B"], a["c_R"], a["delta"]};
}

schemes::TrotterPlan trotter_plan(const Args& a)
{
    schemes::TrotterPlan p;
    p.omega_Rc = a["omega_Rc"];
    p.omega_Rq = a["omega_Rq"];
    p.g_R = a["g_R"];
    p.omega_q1 = a["omega_q1"];
    p.omega_q2 = nan(a["omega_q2"]) ? p.omega_q1 - p.omega_Rq : a["omega_q2"];
    p.steps = a.integer("steps");
    p.order = a.choice("order") == "symmetric" ? schemes::TrotterOrder::Symmetric : schemes::TrotterOrder::First;
    return p;
}

squeeze_amp::SqueezeFrame frame_of(const Args& a) { return {a["r"], a["theta"]}; }

// --------------------------------------------------------------- checks

CheckResult two_tone_check(const Args& a, const std::optional<TimeGrid>& g)
{
    const std::size_t n = a.cutoff("cav");
    const auto s = schemes::two_tone_scheme(two_tone_params(a), n);
    const HilbertSpace sp({2, n});
    const double w = std::abs(s.omega_eff) > 0.0 ? std::abs(s.omega_eff) : std::abs(s.g_eff);
    const TimeGrid grid = grid_or(g, 3.0 * 2.0 * pi / w, 61, 1e-10);
    const Vec psi0 = basis(sp.total(), 0);
    const auto full = kets(dynamics::evolve_unitary(s.H_lab_frame, QState::ket(sp, psi0), grid));
    const Spectral eff(s.H_eff);
    const Vec e0 = s.frame.to_effective(psi0, grid.t0);
    std::vector<double> ts = grid.times(), fid, pf, pe;
    double sq = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const Vec f = s.frame.to_effective(full[k], ts[k]);
        const Vec e = eff.apply(ts[k] - grid.t0, e0);
        fid.push_back(overlap(f, e));
        pf.push_back(upper(f, n));
        pe.push_back(upper(e, n));
        sq += (pf.back() - pe.back()) * (pf.back() - pe.back());
    }
    CheckResult r;
    r.table.add_column("t", ts);
    r.table.add_column("fidelity", fid);
    r.table.add_column("P_e_full", pf);
    r.table.add_column("P_e_eff", pe);
    r.summary = {{"ratio", s.g_eff / s.omega_eff},
                 {"g_eff", s.g_eff},
                 {"omega_eff", s.omega_eff},
                 {"qubit_eff", s.qubit_eff},
                 {"min_fidelity", min_of(fid)},
                 {"rms_P_e", std::sqrt(sq / static_cast<double>(ts.size()))}};
    return r;
}

CheckResult ion_check(const Args& a, const std::optional<TimeGrid>& g)
{
    const std::size_t n = a.cutoff("mot");
    const auto p = ion_params(a);
    const auto eff_model = schemes::ion_bichromatic(p, n);
    const auto full_model = schemes::ion_full_model(p, n);
    const HilbertSpace sp({2, n});
    const double w = std::abs(eff_model.omega_eff_mode) > 0.0 ? std::abs(eff_model.omega_eff_mode)
                                                                : std::abs(eff_model.g_eff);
    const TimeGrid grid = grid_or(g, 2.0 * 2.0 * pi / w, 41, 1e-9);
    const Vec psi0 = basis(sp.total(), 0);
    const auto full = kets(dynamics::evolve_unitary(full_model.H, QState::ket(sp, psi0), grid));
    const Spectral eff(eff_model.H_eff);
    const Vec e0 = full_model.frame.to_effective(psi0, grid.t0);
    std::vector<double> ts = grid.times(), fid, pf, pe;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const Vec f = full_model.frame.to_effective(full[k], ts[k]);
        const Vec e = eff.apply(ts[k] - grid.t0, e0);
        fid.push_back(overlap(f, e));
        pf.push_back(upper(f, n));
        pe.push_back(upper(e, n));
    }
    CheckResult r;
    r.table.add_column("t", ts);
    r.table.add_column("fidelity", fid);
    r.table.add_column("P_e_full", pf);
    r.table.add_column("P_e_eff", pe);
    r.summary = {{"g_eff", eff_model.g_eff},
                 {"omega_eff_mode", eff_model.omega_eff_mode},
                 {"omega_eff_qubit", eff_model.omega_eff_qubit},
                 {"ratio", w > 0.0 ? std::abs(eff_model.g_eff) / w : unset},
                 {"min_fidelity", min_of(fid)}};
    return r;
}

CheckResult raman_check(const Args& a, const std::optional<TimeGrid>& g)
{
    const auto p = raman_params(a);
    if (p.N != 1) throw Error(ErrorKind::DomainError, "the four-level comparison covers a single atom (N = 1)");
    const std::size_t n = a.cutoff("cav");
    const auto E = schemes::raman_effective(p, n);
    const Operator H4 = schemes::h_raman_four_level(p, n);
    const auto& c = E.couplings;
    const double w = std::max({std::abs(c.Delta_c), std::abs(c.Delta_0), 2.0 * std::abs(c.lambda_s),
                               2.0 * std::abs(c.lambda_r)});
    const TimeGrid grid = grid_or(g, 2.0 * 2.0 * pi / w, 41, 1e-10);
    const Spectral full(H4), eff(E.H_eff_full);
    // |1, 0 photons> in both models; atom levels |0>, |1> map to S_z = -1/2, +1/2.
    const Vec f0 = basis(4 * n, n), e0 = basis(2 * n, n);
    std::vector<double> ts = grid.times(), fid, pf, pe;
    for (double t : ts) {
        const Vec f = full.apply(t - grid.t0, f0).head(static_cast<Eigen::Index>(2 * n));
        const Vec e = eff.apply(t - grid.t0, e0);
        fid.push_back(std::norm(f.dot(e)));
        pf.push_back(std::norm(f(1)));
        pe.push_back(std::norm(e(1)));
    }
    CheckResult r;
    r.table.add_column("t", ts);
    r.table.add_column("fidelity", fid);
    r.table.add_column("P_0_1photon_full", pf);
    r.table.add_column("P_0_1photon_eff", pe);
    r.summary = {{"lambda_s", c.lambda_s}, {"lambda_r", c.lambda_r}, {"Delta_c", c.Delta_c},
                 {"Delta_0", c.Delta_0},   {"chi", c.chi},           {"min_fidelity", min_of(fid)}};
    return r;
}

CheckResult three_wave_check(const Args& a, const std::optional<TimeGrid>& g)
{
    const auto p = three_wave_params(a);
    const std::size_t na = a.cutoff("a"), nb = a.cutoff("b");
    const auto E = schemes::three_wave_hopfield(p, na, nb);
    const auto F = schemes::three_wave_full(p, na, nb);
    const HilbertSpace sp({na, nb});
    const double w = std::abs(p.delta) > 0.0 ? std::abs(p.delta) : std::max(std::abs(E.G_B), std::abs(E.G_R));
    const TimeGrid grid = grid_or(g, 2.0 * 2.0 * pi / w, 41, 1e-9);
    const Vec psi0 = basis(sp.total(), 0);
    const auto full = kets(dynamics::evolve_unitary(F.H, QState::ket(sp, psi0), grid));
    const Spectral eff(E.H_eff);
    const Operator na_op = embed(hilbert::number(na), sp, 0);
    std::vector<double> ts = grid.times(), fid, nf, ne;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const Vec e = eff.apply(ts[k] - grid.t0, psi0);
        fid.push_back(overlap(full[k], e));
        nf.push_back(QState::normalized_ket(sp, full[k]).expect(na_op).real());
        ne.push_back(QState::normalized_ket(sp, e).expect(na_op).real());
    }
    CheckResult r;
    r.table.add_column("t", ts);
    r.table.add_column("fidelity", fid);
    r.table.add_column("n_a_full", nf);
    r.table.add_column("n_a_eff", ne);
    r.summary = {{"G_B", E.G_B}, {"G_R", E.G_R}, {"min_fidelity", min_of(fid)}};
    return r;
}

CheckResult cross_kerr_check(const Args& a, const std::optional<TimeGrid>& g)
{
    const double chi = a["chi"], beta = a["beta_b"], Db = a["Delta_b"];
    const std::size_t na = a.cutoff("a"), nb = a.cutoff("b");
    const bool residual = a.choice("residual_kerr") == "true";
    const auto S = schemes::cross_kerr_optomech(chi, beta, Db, na, nb, residual);
    const Operator Hf = schemes::cross_kerr_full(chi, beta, Db, na, nb);
    const Dense D = hilbert::kron(hilbert::eye(na), hilbert::displace(nb, cplx(-beta, 0.0))).dense();
    const TimeGrid grid = grid_or(g, 2.0 * 2.0 * pi / std::abs(Db), 41, 1e-10);
    // (|0> + |1>)/sqrt 2 on a, displaced-frame vacuum on b.
    Vec ps = Vec::Zero(static_cast<Eigen::Index>(na * nb));
    ps(0) = ps(static_cast<Eigen::Index>(nb)) = std::sqrt(0.5);
    const Vec pf = D * ps;
    const Spectral full(Hf), sim(S.H_sim);
    std::vector<double> ts = grid.times(), fid;
    for (double t : ts) {
        Vec s = sim.apply(t - grid.t0, ps);
        for (std::size_t m = 0; m < na; ++m) {
            s.segment(static_cast<Eigen::Index>(m * nb), static_cast<Eigen::Index>(nb)) *=
                std::exp(cplx(0.0, -S.omega_a_shift * static_cast<double>(m) * (t - grid.t0)));
        }
        fid.push_back(overlap(full.apply(t - grid.t0, pf), D * s));
    }
    CheckResult r;
    r.table.add_column("t", ts);
    r.table.add_column("fidelity", fid);
    r.summary = {{"g_om_eff", S.g_om_eff}, {"ratio", S.ratio}, {"omega_a_shift", S.omega_a_shift},
                 {"min_fidelity", min_of(fid)}};
    return r;
}

CheckResult trotter_check(const Args& a, std::size_t N)
{
    const auto plan = trotter_plan(a);
    models::JcParams base;
    base.omega_cav = a["omega_cav"];
    base.omega_q = a["omega_cav"];
    base.g = a["g"];
    const double t = a["t"];
    const std::size_t n = a.cutoff("cav");
    std::vector<double> steps, err, fid;
    for (std::size_t div : {8u, 4u, 2u, 1u}) {
        if (plan.steps % div != 0) continue;
        auto p = plan;
        p.steps = plan.steps / div;
        const auto res = schemes::dicke_trotter(p, base, N, t, n);
        // Ground state, vacuum: converges with the cutoff, unlike the full-space norm.
        const Vec psi0 = basis(res.U_target.space().total(), 0);
        const Vec x = res.U_digital.dense() * psi0, y = res.U_target.dense() * psi0;
        steps.push_back(static_cast<double>(p.steps));
        err.push_back((x - y).norm());
        fid.push_back(overlap(x, y));
    }
    const auto last = schemes::dicke_trotter(plan, base, N, t, n);
    CheckResult r;
    r.table.add_column("steps", steps);
    r.table.add_column("state_error", err);
    r.table.add_column("fidelity", fid);
    r.summary = {{"trotter_error", last.trotter_error}, {"state_error", err.back()}, {"fidelity", fid.back()},
                 {"slope", slope(steps, err)}, {"ratio", plan.g_R / plan.omega_Rc}, {"omega_RF", last.omega_RF},
                 {"qubit_step1", last.qubit_step1}, {"qubit_step2", last.qubit_step2}};
    return r;
}

CheckResult parity_check(const Args& a, const std::optional<TimeGrid>& g)
{
    models::JcParams p;
    p.omega_cav = a["omega_cav"];
    p.omega_q = a["omega_q"];
    p.g = a["g"];
    const std::size_t n = a.cutoff("cav");
    const auto chain = a.choice("chain") == "f" ? schemes::ParityChain::F : schemes::ParityChain::C;
    const TimeGrid grid = grid_or(g, 10.0 / p.omega_cav, 11, 1e-10);
    const Spectral full(models::h_rabi(p, models::GaugeChoice::SimpleRabi, n));
    const Vec c0 = basis(n, 0);
    const Vec f0 = basis(2 * n, schemes::parity_chain_site_index(chain, 0, n));
    std::vector<double> ts = grid.times(), diff;
    for (double t : ts) {
        const Vec c = schemes::parity_chain_propagate(p.omega_cav, p.omega_q, p.g, chain, n, c0, t - grid.t0);
        const Vec f = full.apply(t - grid.t0, f0);
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            worst = std::max(worst, std::abs(c(static_cast<Eigen::Index>(k)) -
                                             f(static_cast<Eigen::Index>(schemes::parity_chain_site_index(chain, k, n)))));
        }
        diff.push_back(worst);
    }
    CheckResult r;
    r.table.add_column("t", ts);
    r.table.add_column("max_amplitude_diff", diff);
    r.summary = {{"max_amplitude_diff", *std::max_element(diff.begin(), diff.end())}, {"ratio", p.g / p.omega_cav}};
    return r;
}

effective::EffectiveResult closed_form(effective::Example which, const Args& a)
{
    const double g = a["g"], R = a["R"], th = a["theta"];
    const int n = static_cast<int>(a.integer("n"));
    switch (which) {
    case effective::Example::I: return effective::example_I_two_photon(g, R, th, a["f"], n, static_cast<int>(a.integer("m")));
    case effective::Example::II:
        return effective::example_II_frequency_conversion(g, R, th, a["f"], n, static_cast<int>(a.integer("m")));
    case effective::Example::III: break;
    }
    return effective::example_III_two_atoms_one_photon(g, R, th, n);
}

CheckResult example_check(effective::Example which, const Args& a)
{
    const bool two_mode = which != effective::Example::III;
    const auto x = effective::example_full_crossing(which, a["g"], a["R"], a["theta"], two_mode ? a["f"] : 0.0,
                                                    static_cast<int>(a.integer("n")),
                                                    two_mode ? static_cast<int>(a.integer("m")) : 0,
                                                    a.cutoff(two_mode ? "a1" : "a"));
    const auto& cf = x.closed_form;
    CheckResult r;
    r.summary = {{"g_eff", cf.g_eff.real()},
                 {"fock_factor", cf.fock_factor},
                 {"delta_resonance", cf.delta_resonance},
                 {"predicted_location", x.predicted_location},
                 {"location", x.crossing.location},
                 {"location_deviation", (x.crossing.location - x.predicted_location) / cf.delta_resonance},
                 {"predicted_splitting", x.predicted_splitting},
                 {"splitting", x.crossing.min_gap},
                 {"splitting_ratio", x.crossing.min_gap / x.predicted_splitting}};
    for (const auto& [k, v] : r.summary) r.table.add_column(k, {v});
    return r;
}

System example_system(effective::Example which, const Args& a)
{
    const auto cf = closed_form(which, a);
    const double D1 = nan(a["D1"]) ? cf.detunings[0] + cf.delta_resonance : a["D1"];
    if (which == effective::Example::III) {
        return {effective::h_dressed_two_qubit(a["g"], a["R"], a["theta"], D1, a.cutoff("a")), {}, {}};
    }
    const double D2 = nan(a["D2"]) ? cf.detunings[1] : a["D2"];
    return {effective::h_dressed_two_mode(a["g"], a["R"], a["theta"], D1, D2, a.cutoff("a1")), {}, {}};
}

CheckResult one_row(std::vector<std::pair<std::string, double>> values)
{
    CheckResult r;
    r.summary = std::move(values);
    for (const auto& [k, v] : r.summary) r.table.add_column(k, {v});
    return r;
}

CheckResult realization_check(schemes::RealizationKind kind, const Args& a)
{
    const auto m = schemes::realization_maps(kind, a.numbers);
    return one_row({{"omega_cav_eff", m.omega_cav_eff},
                    {"omega_q_eff", m.omega_q_eff},
                    {"g_eff", m.g_eff},
                    {"ratio", m.ratio},
                    {"balanced", m.balanced ? 1.0 : 0.0}});
}

// ------------------------------------------------------------- registry

std::vector<Entry> build_registry()
{
    std::vector<Entry> r;

    r.push_back({"jc", "models", "Jaynes-Cummings model", jc_param_specs(0.05), {qubit("q"), boson("cav", 10)}, open_dyn,
                 [](const Args& a) {
                     const auto p = jc_params(a);
                     Operator H = models::h_jc(p, a.cutoff("cav"));
                     return System{H, {}, jc_channels(p, H.space())};
                 },
                 {}});

    {
        auto params = jc_param_specs(0.5);
        params.push_back(choice("gauge", "simple", {"simple", "dipole", "coulomb_naive", "coulomb_corrected"},
                                "gauge of the two-level truncation"));
        r.push_back({"rabi", "models", "quantum Rabi model in a chosen gauge", params, {qubit("q"), boson("cav", 30)},
                     open_dyn,
                     [](const Args& a) {
                         const auto p = jc_params(a);
                         Operator H = models::h_rabi(p, gauge_of(a.choice("gauge")), a.cutoff("cav"));
                         return System{H, {}, jc_channels(p, H.space())};
                     },
                     {}});
    }

    r.push_back({"dicke", "models", "Dicke model with individual qubits",
                 {real("omega_cav", 1.0, "cavity frequency"), real("omega_q", 1.0, "qubit frequency"),
                  real("g", 0.3, "single-qubit coupling"), count("N", 2, "number of qubits"),
                  choice("gauge", "bare", {"bare", "dipole"}, "gauge")},
                 {qubits("q", "N"), boson("cav", 20)}, dyn,
                 [](const Args& a) {
                     const auto gauge = a.choice("gauge") == "dipole" ? models::DickeGauge::Dipole : models::DickeGauge::Bare;
                     return System{models::h_dicke(a["omega_cav"], a["omega_q"], a["g"], a.integer("N"), a.cutoff("cav"), gauge),
                                   {}, {}};
                 },
                 {}});

    r.push_back({"tavis_cummings", "models", "Tavis-Cummings model in the symmetric spin basis",
                 {real("omega_cav", 1.0, "cavity frequency"), real("omega_q", 1.0, "qubit frequency"),
                  real("g", 0.05, "single-qubit coupling"), count("N", 4, "number of qubits")},
                 {spin("spin", "N"), boson("cav", 10)}, dyn,
                 [](const Args& a) {
                     return System{models::h_tavis_cummings_collective(a["omega_cav"], a["omega_q"], a["g"], a.integer("N"),
                                                                       a.cutoff("cav")),
                                   {}, {}};
                 },
                 {}});

    r.push_back({"holstein_primakoff", "models", "bosonized collective spin coupled to a cavity",
                 {real("omega_cav", 1.0, "cavity frequency"), real("omega_q", 1.0, "qubit frequency"),
                  real("g", 0.05, "single-qubit coupling"), count("N", 20, "number of qubits")},
                 {boson("s", 6), boson("cav", 6)}, dyn,
                 [](const Args& a) {
                     return System{models::h_holstein_primakoff(a["omega_cav"], a["omega_q"], a["g"], a.integer("N"),
                                                                a.cutoff("s"), a.cutoff("cav")),
                                   {}, {}};
                 },
                 {}});

    r.push_back({"optomech", "models", "cavity optomechanics with radiation-pressure coupling",
                 {real("g0", 0.05, "single-photon coupling"), real("omega_m", 1.0, "mechanical frequency"),
                  real("omega_cav", 1.0, "cavity frequency in the chosen frame"), real("kappa", 0.0, "cavity decay"),
                  real("gamma_m", 0.0, "mechanical damping"), real("n_th", 0.0, "thermal phonons")},
                 {boson("a", 6), boson("b", 8)}, open_dyn,
                 [](const Args& a) {
                     models::OptomechParams p;
                     p.g0 = a["g0"];
                     p.omega_m = a["omega_m"];
                     p.omega_cav = a["omega_cav"];
                     p.kappa = a["kappa"];
                     p.gamma_m = a["gamma_m"];
                     p.n_th = a["n_th"];
                     const std::size_t na = a.cutoff("a"), nb = a.cutoff("b");
                     return System{models::h_optomech(p, na, nb), {}, models::optomech_channels(p, na, nb)};
                 },
                 {}});

    r.push_back({"optomech_linearized", "models", "linearized optomechanics around the driven steady state",
                 {real("g0", 0.001, "single-photon coupling"), real("omega_m", 1.0, "mechanical frequency"),
                  real("kappa", 0.1, "cavity decay"), real("drive", 10.0, "drive amplitude (real)"),
                  real("detuning", 1.0, "cavity-drive detuning (red sideband at +omega_m)")},
                 {boson("a", 6), boson("b", 6)}, dyn,
                 [](const Args& a) {
                     models::OptomechParams p;
                     p.g0 = a["g0"];
                     p.omega_m = a["omega_m"];
                     p.kappa = a["kappa"];
                     p.drive = a["drive"];
                     p.detuning = a["detuning"];
                     return System{models::linearize_optomech(p, a.cutoff("a"), a.cutoff("b")).H_lin, {}, {}};
                 },
                 {}});

    r.push_back({"double_cavity", "models", "two coupled cavities sharing a mechanical mode",
                 {real("J", 1.0, "cavity-cavity tunneling"), real("zeta", 0.0, "modulation depth"),
                  real("omega_0", 0.0, "modulation frequency"), count("n0", 1, "modulation harmonic"),
                  real("delta", 0.0, "mechanical detuning"), real("g0", 0.01, "single-photon coupling"),
                  real("omega_cav", 10.0, "bare cavity frequency"), real("omega_m", 2.0, "mechanical frequency"),
                  choice("basis", "normal", {"normal", "bare"}, "normal modes (a_plus, a_minus, b) or bare (a, c, b)")},
                 {boson("m1", 3), tied("m2", "m1"), boson("b", 4)}, dyn,
                 [](const Args& a) {
                     models::DoubleCavityParams p;
                     p.J = a["J"];
                     p.zeta = a["zeta"];
                     p.omega_0 = a["omega_0"];
                     p.n0 = static_cast<int>(a.integer("n0"));
                     p.delta = a["delta"];
                     const auto d = models::h_double_cavity(p, a["g0"], a["omega_cav"], a["omega_m"], a.cutoff("m1"),
                                                            a.cutoff("b"));
                     return System{a.choice("basis") == "bare" ? d.H_full : d.H_dc, {}, {}};
                 },
                 {}});

    r.push_back({"dpa", "models", "detuned degenerate parametric amplifier",
                 {real("Omega_2ph", 0.5, "two-photon drive"), real("Delta_2ph", 1.0, "drive detuning"),
                  real("theta_2ph", 0.0, "drive phase")},
                 {boson("a", 30)}, dyn,
                 [](const Args& a) {
                     return System{models::h_dpa({a["Omega_2ph"], a["Delta_2ph"], a["theta_2ph"]}, a.cutoff("a")).H, {}, {}};
                 },
                 {}});

    r.push_back({"hopfield", "models", "two coupled bosonic modes",
                 {real("omega_a", 1.0, "mode a frequency"), real("omega_b", 1.0, "mode b frequency"),
                  real("G", 0.2, "coupling"), real("G_prime", 0.0, "diamagnetic term"),
                  choice("gauge", "bare", {"bare", "dipole", "coulomb"}, "gauge")},
                 {boson("a", 10), boson("b", 10)}, dyn,
                 [](const Args& a) {
                     models::HopfieldParams p;
                     p.omega_a = a["omega_a"];
                     p.omega_b = a["omega_b"];
                     p.G = a["G"];
                     p.G_prime = a["G_prime"];
                     const auto& gname = a.choice("gauge");
                     p.gauge = gname == "dipole"    ? models::HopfieldGauge::Dipole
                               : gname == "coulomb" ? models::HopfieldGauge::Coulomb
                                                    : models::HopfieldGauge::Bare;
                     return System{models::h_hopfield(p, a.cutoff("a"), a.cutoff("b")), {}, {}};
                 },
                 {}});

    r.push_back({"squeezed_jc", "squeeze_amp", "atom-cavity coupling in the squeezed frame",
                 {real("omega_sq", 1.0, "squeezed-mode frequency"), real("Delta_q", 1.0, "qubit detuning"),
                  real("g", 0.01, "bare coupling"), real("r", 1.0, "squeezing"), real("theta", pi, "squeezing phase"),
                  choice("rwa", "false", {"false", "true"}, "drop the counter-rotating term")},
                 {qubit("q"), boson("a_sq", 10)}, dyn,
                 [](const Args& a) {
                     return System{squeeze_amp::h_squeezed_jc(a["omega_sq"], a["Delta_q"], a["g"], frame_of(a),
                                                              a.cutoff("a_sq"), a.choice("rwa") == "true")
                                       .H,
                                   {}, {}};
                 },
                 {}});

    r.push_back({"squeezed_optomech", "squeeze_amp", "optomechanics in the squeezed frame",
                 {real("omega_sq", 5.0, "squeezed-mode frequency"), real("omega_m", 1.0, "mechanical frequency"),
                  real("g0", 0.01, "bare coupling"), real("r", 1.0, "squeezing"), real("theta", 0.0, "squeezing phase"),
                  choice("form", "full", {"full", "rwa", "hyper_raman"}, "which two-photon terms to keep")},
                 {boson("a_sq", 6), boson("b", 8)}, dyn,
                 [](const Args& a) {
                     const auto& f = a.choice("form");
                     const auto form = f == "rwa"           ? squeeze_amp::SqueezedOptomechForm::Rwa
                                       : f == "hyper_raman" ? squeeze_amp::SqueezedOptomechForm::HyperRaman
                                                            : squeeze_amp::SqueezedOptomechForm::Full;
                     return System{squeeze_amp::h_squeezed_optomech(a["omega_sq"], a["omega_m"], a["g0"], frame_of(a),
                                                                    a.cutoff("a_sq"), a.cutoff("b"), form)
                                       .H,
                                   {}, {}};
                 },
                 {}});

    r.push_back({"squeezed_cavity", "squeeze_amp", "squeezed-frame cavity coupled to a squeezed bath",
                 {real("omega_sq", 1.0, "squeezed-mode frequency"), real("r", 1.0, "frame squeezing"),
                  real("theta", 0.0, "frame squeezing phase"), real("r_e", 1.0, "bath squeezing"),
                  real("theta_e", pi, "bath squeezing phase"), real("kappa", 0.1, "cavity decay")},
                 {boson("a_sq", 30)}, {Task::Evolve, Task::SteadyState},
                 [](const Args& a) {
                     const std::size_t n = a.cutoff("a_sq");
                     const Operator H = a["omega_sq"] * hilbert::number(n);
                     auto m = squeeze_amp::squeezed_master_equation(frame_of(a), {a["r_e"], a["theta_e"], a["kappa"]}, H, 0);
                     return System{m.H, {}, m.channels};
                 },
                 {}});

    r.push_back({"kerr_circuit", "squeeze_amp", "amplified cross-Kerr gate sequence",
                 {real("g", 0.05, "bare Kerr strength"), real("theta1", 0.6, "squeezing angle"),
                  choice("two_mode", "false", {"false", "true"}, "two bosonic modes"),
                  count("pad", 400, "padded Fock dimension for the squeezing gates")},
                 {qubit("atom"), boson("b", 12)}, {Task::KerrVerify},
                 {},
                 [](const Args& a, const std::optional<TimeGrid>&) {
                     const squeeze_amp::KerrAmpParams p{a["g"], a["theta1"], a.choice("two_mode") == "true"};
                     const auto v = squeeze_amp::verify_kerr_circuit(p, a.cutoff("b"), a.integer("pad"));
                     return one_row({{"theta2", v.amp.theta2},
                                     {"g_gamma", v.amp.g_gamma},
                                     {"kappa_amp", v.amp.kappa_amp},
                                     {"kappa_small_angle", v.amp.kappa_small_angle},
                                     {"residual", v.residual}});
                 }});

    r.push_back({"displacement_amp", "squeeze_amp", "split-displacement amplification",
                 {real("alpha_re", 0.5, "Re alpha"), real("alpha_im", 0.0, "Im alpha"), real("r", 1.38, "squeezing"),
                  real("theta_2ph", 0.0, "phase-sensitive reference phase"), count("pad", 400, "padded Fock dimension")},
                 {boson("a", 20)}, {Task::AmplifyCheck},
                 {},
                 [](const Args& a, const std::optional<TimeGrid>&) {
                     const cplx alpha(a["alpha_re"], a["alpha_im"]);
                     const double r = a["r"];
                     const std::size_t n = a.cutoff("a");
                     const Dense U = squeeze_amp::split_displacement(n, alpha, r, a.integer("pad"));
                     const Dense D = hilbert::displace(n, std::cosh(r) * alpha).dense() *
                                     std::exp(cplx(0.0, std::sinh(2.0 * r) * std::imag(alpha * alpha) / 4.0));
                     // Low-lying block only, away from the truncation edge.
                     if (n < 16) throw Error(ErrorKind::InvalidDimension, "displacement check needs a cutoff of at least 16");
                     const double err = (U - D).topLeftCorner(8, 4).cwiseAbs().maxCoeff();
                     const double a0 = std::abs(alpha) > 0.0 ? std::abs(alpha) : 1.0;
                     return one_row({{"gain_insensitive", std::abs(squeeze_amp::displacement_amplification(
                                                              alpha, r, squeeze_amp::DisplacementMode::PhaseInsensitive)) / a0},
                                     {"gain_sensitive", std::abs(squeeze_amp::displacement_amplification(
                                                            alpha, r, squeeze_amp::DisplacementMode::PhaseSensitive,
                                                            a["theta_2ph"])) / a0},
                                     {"cosh_r", std::cosh(r)},
                                     {"split_error", err}});
                 }});

    r.push_back({"hamiltonian_amp", "squeeze_amp", "Trotterized cosh(r) amplification of a JC interaction",
                 {real("g", 0.05, "JC coupling"), real("r", 0.5, "squeezing"), count("steps", 20, "Trotter steps"),
                  real("t", 1.0, "evolution time"), count("probe_levels", 4, "photon levels compared (0 = all)")},
                 {qubit("q"), boson("a", 30)}, {Task::AmplifyCheck},
                 {},
                 [](const Args& a, const std::optional<TimeGrid>&) {
                     const std::size_t n = a.cutoff("a");
                     const HilbertSpace sp({2, n});
                     const Operator am = embed(hilbert::destroy(n), sp, 1);
                     const Operator sm = embed(hilbert::sigma_minus(), sp, 0);
                     const Operator H = a["g"] * (am * sm.adjoint() + am.adjoint() * sm);
                     const auto res = squeeze_amp::trotterized_hamiltonian_amplification(
                         H, 1, a["r"], a.integer("steps"), a["t"], a.integer("probe_levels"));
                     return one_row({{"error", res.error}, {"gain", std::cosh(a["r"])}});
                 }});

    r.push_back({"dispersive", "squeeze_amp", "dispersive shift in the squeezed frame",
                 {real("g", 0.01, "coupling"), real("Delta_q", 1.0, "qubit detuning"), real("omega_sq", 0.5, "mode frequency"),
                  real("r", 0.5, "squeezing"), real("chi_anh", unset, "transmon anharmonicity (unset: two-level)")},
                 {}, {Task::AmplifyCheck},
                 {},
                 [](const Args& a, const std::optional<TimeGrid>&) {
                     squeeze_amp::DispersiveParams p{a["g"], a["Delta_q"], a["omega_sq"], a["r"], std::nullopt};
                     if (!nan(a["chi_anh"])) p.chi_anh = a["chi_anh"];
                     const auto d = squeeze_amp::dispersive_shift(p);
                     return one_row({{"chi", d.chi}, {"chi_trans", d.chi_trans}});
                 }});

    r.push_back({"raman", "schemes", "cavity-assisted Raman scheme (effective Dicke/Rabi model)",
                 {real("g_s", 0.1, "cavity coupling on the s transition"), real("g_r", 0.1, "cavity coupling on the r transition"),
                  real("Omega_s", 1.0, "pump on the s transition"), real("Omega_r", 1.0, "pump on the r transition"),
                  real("Delta_s", 10.0, "excited-state detuning s"), real("Delta_r", 10.0, "excited-state detuning r"),
                  real("delta_c", 0.0085, "cavity detuning"), real("Delta_1", 0.0075, "ground-state splitting"),
                  count("N", 1, "number of atoms"),
                  choice("form", "full", {"full", "dicke"}, "effective model with or without the dispersive term")},
                 {spin("spin", "N"), boson("cav", 20)}, {Task::Evolve, Task::Spectrum, Task::SchemeCheck},
                 [](const Args& a) {
                     const auto e = schemes::raman_effective(raman_params(a), a.cutoff("cav"));
                     return System{a.choice("form") == "dicke" ? e.H_dicke : e.H_eff_full, {}, {}};
                 },
                 raman_check});

    r.push_back({"two_tone", "schemes", "two-tone driven JC simulating the Rabi model",
                 {real("omega_cav", 1000.0 + 1.0 / 1.2, "cavity frequency"), real("omega_q", unset, "qubit frequency (unset: omega_1)"),
                  real("g", 1.0, "JC coupling"), real("omega_1", 1000.0, "first drive frequency"),
                  real("Omega_1", 50.0, "first drive amplitude"), real("omega_2", unset, "second drive (unset: omega_1 + 2 Omega_1)"),
                  real("Omega_2", 0.4, "second drive amplitude")},
                 {qubit("q"), boson("cav", 30)}, {Task::Evolve, Task::Spectrum, Task::SchemeCheck},
                 [](const Args& a) { return System{schemes::two_tone_scheme(two_tone_params(a), a.cutoff("cav")).H_eff, {}, {}}; },
                 two_tone_check});

    r.push_back({"ion_bichromatic", "schemes", "trapped ion with red and blue sideband drives",
                 {real("eta", 0.1, "Lamb-Dicke parameter"), real("Omega", 0.1, "drive strength"),
                  real("delta_r", -0.01, "red detuning"), real("delta_b", 0.01, "blue detuning"),
                  real("omega_mot", 1.0, "trap frequency"), real("omega_q", 0.0, "qubit frequency (frame)"),
                  choice("order", "first", {"first", "second"}, "sideband order")},
                 {qubit("q"), boson("mot", 20)}, {Task::Evolve, Task::Spectrum, Task::SchemeCheck},
                 [](const Args& a) { return System{schemes::ion_bichromatic(ion_params(a), a.cutoff("mot")).H_eff, {}, {}}; },
                 ion_check});

    r.push_back({"single_drive_dressed", "schemes", "single-drive dressed-basis scheme",
                 {real("omega_cav", 1.0, "cavity frequency"), real("omega_q", 1.0, "qubit frequency"),
                  real("g", 0.02, "JC coupling"), real("Omega", 1.0, "drive amplitude"),
                  real("Delta_a", 2.0, "cavity-drive detuning"), real("Delta_sigma", 0.0, "qubit-drive detuning"),
                  count("n_atoms", 1, "number of atoms"),
                  choice("form", "dressed", {"dressed", "driven"}, "dressed-basis or bare driven Hamiltonian")},
                 {qubits("q", "n_atoms"), boson("cav", 10)}, {Task::Evolve, Task::Spectrum, Task::SchemeCheck},
                 [](const Args& a) {
                     const auto s = schemes::single_drive_dressed(jc_params(a), a["Omega"], a["Delta_a"], a["Delta_sigma"],
                                                                  a.integer("n_atoms"), a.cutoff("cav"));
                     return System{a.choice("form") == "driven" ? s.H_driven : s.H_dressed, {}, {}};
                 },
                 [](const Args& a, const std::optional<TimeGrid>&) {
                     const auto s = schemes::single_drive_dressed(jc_params(a), a["Omega"], a["Delta_a"], a["Delta_sigma"],
                                                                  a.integer("n_atoms"), a.cutoff("cav"));
                     CheckResult r;
                     std::vector<double> idx, res, det, ge;
                     for (std::size_t k = 0; k < s.resonances.size(); ++k) {
                         idx.push_back(static_cast<double>(k));
                         res.push_back(s.resonances[k].resonance);
                         det.push_back(s.resonances[k].detuning);
                         ge.push_back(s.resonances[k].g_eff);
                         r.table.metadata["process_" + std::to_string(k)] = s.resonances[k].name;
                     }
                     r.table.add_column("process", idx);
                     r.table.add_column("resonance", res);
                     r.table.add_column("detuning", det);
                     r.table.add_column("g_eff", ge);
                     r.summary = {{"R", s.qubit.R}, {"theta", s.qubit.theta}, {"closest_detuning", det.front()}};
                     return r;
                 }});

    const std::vector<ParamSpec> trotter_specs{
        real("omega_Rc", 1.0 / 1.8, "simulated cavity frequency"), real("omega_Rq", 0.5, "simulated qubit frequency"),
        real("g_R", 1.0, "simulated coupling (equals the device coupling)"),
        real("omega_q1", 0.25, "qubit detuning during the JC step"),
        real("omega_q2", unset, "qubit detuning during the anti-JC step (unset: omega_q1 - omega_Rq)"),
        count("steps", 64, "Trotter steps"), choice("order", "first", {"first", "symmetric"}, "splitting order"),
        real("omega_cav", 10.0, "device cavity frequency"), real("g", 1.0, "device coupling"),
        real("t", 1.0, "simulated time")};
    r.push_back({"digital_trotter", "schemes", "digital Trotter simulation of the Rabi model", trotter_specs,
                 {qubit("q"), boson("cav", 20)}, {Task::SchemeCheck}, {},
                 [](const Args& a, const std::optional<TimeGrid>&) { return trotter_check(a, 1); }});
    {
        auto specs = trotter_specs;
        specs.push_back(count("N", 2, "number of qubits"));
        r.push_back({"dicke_trotter", "schemes", "digital Trotter simulation of the Dicke model", specs,
                     {qubits("q", "N"), boson("cav", 16)}, {Task::SchemeCheck}, {},
                     [](const Args& a, const std::optional<TimeGrid>&) { return trotter_check(a, a.integer("N")); }});
    }

    r.push_back({"three_wave", "schemes", "three-wave mixing simulating ultrastrong mode coupling",
                 {real("omega_a", 100.0, "mode a frequency"), real("omega_b", 60.0, "mode b frequency"),
                  real("chi", 0.01, "three-wave coupling"), real("c_B", 20.0, "blue pump amplitude"),
                  real("c_R", 10.0, "red pump amplitude"), real("delta", 1.0, "frame detuning")},
                 {boson("a", 8), boson("b", 8)}, {Task::Evolve, Task::Spectrum, Task::SchemeCheck},
                 [](const Args& a) {
                     return System{schemes::three_wave_hopfield(three_wave_params(a), a.cutoff("a"), a.cutoff("b")).H_eff, {}, {}};
                 },
                 three_wave_check});

    r.push_back({"cross_kerr", "schemes", "driven cross-Kerr system simulating ultrastrong optomechanics",
                 {real("chi", 0.01, "cross-Kerr strength"), real("beta_b", 5.0, "pump amplitude of mode b"),
                  real("Delta_b", 1.0, "pump detuning of mode b"),
                  choice("residual_kerr", "false", {"false", "true"}, "keep the residual cross-Kerr term")},
                 {boson("a", 3), boson("b", 100)}, {Task::Evolve, Task::Spectrum, Task::SchemeCheck},
                 [](const Args& a) {
                     return System{schemes::cross_kerr_optomech(a["chi"], a["beta_b"], a["Delta_b"], a.cutoff("a"),
                                                                a.cutoff("b"), a.choice("residual_kerr") == "true")
                                       .H_sim,
                                   {}, {}};
                 },
                 cross_kerr_check});

    r.push_back({"parity_chain", "schemes", "single-parity chain propagation of the Rabi model",
                 {real("omega_cav", 1.0, "cavity frequency"), real("omega_q", 0.8, "qubit frequency"),
                  real("g", 0.65, "coupling"), choice("chain", "c", {"c", "f"}, "parity chain")},
                 {boson("cav", 60)}, {Task::SchemeCheck}, {}, parity_check});

    r.push_back({"cold_atoms", "schemes", "Rabi parameters of an atom in a trap plus lattice (SI inputs)",
                 {real("mass", 1.443e-25, "atom mass [kg]"), real("omega0", 2.0 * pi * 151.0, "trap frequency [rad/s]"),
                  real("k0", 2.0 * pi / 780e-9, "lattice wave number [1/m]"), real("V", 1e-30, "lattice depth [J]")},
                 {}, {Task::SchemeCheck}, {},
                 [](const Args& a, const std::optional<TimeGrid>&) {
                     return realization_check(schemes::RealizationKind::ColdAtoms, a);
                 }});

    r.push_back({"quantum_dot", "schemes", "Rabi parameters of an atomic quantum dot in a condensate (SI inputs)",
                 {real("Omega_d", 2.0 * pi * 300.0, "dot frequency [rad/s]"), real("omega_k", 2.0 * pi * 300.0, "phonon frequency [rad/s]"),
                  real("volume", 1e-15, "condensate volume [m^3]"), real("g_cc", 5e-51, "condensate interaction [J m^3]"),
                  real("g_cd", 1e-50, "dot-condensate interaction [J m^3]"), real("delta_prime", 0.0, "residual bias [rad/s]")},
                 {}, {Task::SchemeCheck}, {},
                 [](const Args& a, const std::optional<TimeGrid>&) {
                     return realization_check(schemes::RealizationKind::QuantumDot, a);
                 }});

    const std::vector<ParamSpec> two_mode_specs{
        real("g", 0.05, "coupling in units of R"), real("R", 1.0, "dressed splitting / 2"),
        real("theta", pi / 4, "mixing angle"), real("f", 0.3, "detuning split between the modes"),
        count("n", 0, "photons in mode 1"), count("m", 0, "photons in mode 2"),
        real("D1", unset, "mode-1 detuning (unset: predicted resonance)"),
        real("D2", unset, "mode-2 detuning (unset: nominal)")};
    r.push_back({"example_I", "effective", "dressed qubit emitting photon pairs into two modes", two_mode_specs,
                 {qubit("q"), boson("a1", 6), tied("a2", "a1")}, {Task::Evolve, Task::Spectrum, Task::SchemeCheck},
                 [](const Args& a) { return example_system(effective::Example::I, a); },
                 [](const Args& a, const std::optional<TimeGrid>&) { return example_check(effective::Example::I, a); }});
    {
        auto specs = two_mode_specs;
        specs[2].value = pi / 3;
        r.push_back({"example_II", "effective", "dressed qubit converting photons between two modes", specs,
                     {qubit("q"), boson("a1", 6), tied("a2", "a1")}, {Task::Evolve, Task::Spectrum, Task::SchemeCheck},
                     [](const Args& a) { return example_system(effective::Example::II, a); },
                     [](const Args& a, const std::optional<TimeGrid>&) { return example_check(effective::Example::II, a); }});
    }
    r.push_back({"example_III", "effective", "two dressed qubits jointly absorbing one photon",
                 {real("g", 0.05, "coupling in units of R"), real("R", 1.0, "dressed splitting / 2"),
                  real("theta", pi / 4, "mixing angle"), count("n", 0, "photons after absorption"),
                  real("D1", unset, "cavity detuning (unset: predicted resonance)")},
                 {qubit("q1"), qubit("q2"), boson("a", 6)}, {Task::Evolve, Task::Spectrum, Task::SchemeCheck},
                 [](const Args& a) { return example_system(effective::Example::III, a); },
                 [](const Args& a, const std::optional<TimeGrid>&) { return example_check(effective::Example::III, a); }});

    return r;
}

std::string type_name(const ParamSpec& p)
{
    switch (p.type) {
    case ParamType::Real: return "real";
    case ParamType::Integer: return "integer";
    case ParamType::Choice: break;
    }
    std::string s;
    for (const auto& c : p.choices) s += (s.empty() ? "" : "|") + c;
    return s;
}

} // namespace

const std::vector<Entry>& registry()
{
    static const std::vector<Entry> r = build_registry();
    return r;
}

const Entry* find_entry(const std::string& name)
{
    for (const auto& e : registry()) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

std::string list_schemes()
{
    std::ostringstream os;
    for (const auto& e : registry()) {
        os << e.name << "  [" << e.group << "]  " << e.summary << "\n";
        os << "  tasks:";
        for (Task t : e.tasks) os << ' ' << to_string(t);
        os << "\n";
        for (const auto& p : e.params) {
            os << "  " << p.name << " (" << type_name(p) << ", default ";
            if (p.type == ParamType::Choice) {
                os << p.choice;
            } else if (std::isnan(p.value)) {
                os << "derived";
            } else {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.12g", p.value);
                os << buf;
            }
            os << "): " << p.doc << "\n";
        }
        for (const auto& m : e.modes) {
            os << "  mode " << m.name;
            if (!m.repeat.empty()) os << " x " << m.repeat;
            if (m.kind == ModeKind::Qubit) {
                os << " (qubit)";
            } else if (m.kind == ModeKind::Spin) {
                os << " (spin, dimension " << m.dim_param << " + 1)";
            } else if (!m.follows.empty()) {
                os << " (cutoff follows " << m.follows << ")";
            } else {
                os << " (cutoff " << m.cutoff << ")";
            }
            os << "\n";
        }
    }
    os << registry().size() << " entries\n";
    return os.str();
}

} // namespace usc::cli
