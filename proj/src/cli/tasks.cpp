#include "usc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace usc::cli {

using dynamics::LindbladModel;
using hilbert::embed;
using hilbert::HilbertSpace;
using hilbert::QState;

namespace {

struct Observable {
    std::string name;
    Operator op;
};

std::vector<Site> checked_layout(const Entry& e, const Args& a, const HilbertSpace& sp)
{
    const auto sites = layout(e, a);
    bool same = sites.size() == sp.dims().size();
    for (std::size_t k = 0; same && k < sites.size(); ++k) same = sites[k].dim == sp.dims()[k];
    if (!same) throw Error(ErrorKind::ShapeError, "model '" + e.name + "' built a space that does not match its mode table");
    return sites;
}

std::vector<Observable> observables(const std::vector<Site>& sites, const HilbertSpace& sp)
{
    const auto qubits = std::count_if(sites.begin(), sites.end(), [](const Site& s) { return s.kind == ModeKind::Qubit; });
    std::vector<Observable> out;
    for (std::size_t k = 0; k < sites.size(); ++k) {
        const Site& s = sites[k];
        switch (s.kind) {
        case ModeKind::Qubit:
            out.push_back({qubits == 1 ? "P_e" : "P_e_" + s.name, embed(hilbert::projector(2, 1), sp, k)});
            break;
        case ModeKind::Boson: out.push_back({"n_" + s.name, embed(hilbert::number(s.dim), sp, k)}); break;
        case ModeKind::Spin: {
            Dense sz = Dense::Zero(static_cast<Eigen::Index>(s.dim), static_cast<Eigen::Index>(s.dim));
            for (std::size_t m = 0; m < s.dim; ++m) {
                sz(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) =
                    static_cast<double>(m) - static_cast<double>(s.dim - 1) / 2.0;
            }
            out.push_back({"Sz_" + s.name, embed(Operator(HilbertSpace({s.dim}), sz), sp, k)});
            break;
        }
        case ModeKind::Level:
            for (std::size_t m = 0; m < s.dim; ++m) {
                out.push_back({"P" + std::to_string(m) + "_" + s.name, embed(hilbert::projector(s.dim, m), sp, k)});
            }
            break;
        }
    }
    return out;
}

QState initial_state(const ExperimentConfig& c, const std::vector<Site>& sites, const HilbertSpace& sp)
{
    std::vector<std::size_t> occ;
    for (const auto& s : sites) {
        auto it = c.initial.find(s.name);
        if (it == c.initial.end()) it = c.initial.find(s.base);
        const std::size_t level = it == c.initial.end() ? 0 : it->second;
        if (level >= s.dim) throw ConfigError("initial level of '" + s.name + "' exceeds its dimension");
        occ.push_back(level);
    }
    return QState::basis(sp, occ);
}

void add_hygiene(TaskOutput& out, const dynamics::Hygiene& h)
{
    out.summary.push_back({"norm_drift", h.norm_drift});
    out.summary.push_back({"trace_drift", h.trace_drift});
    out.summary.push_back({"min_eigenvalue", h.min_eigenvalue});
    out.summary.push_back({"energy_drift", h.energy_drift});
}

TaskOutput evolve(const Entry& e, const ExperimentConfig& c, const Args& a)
{
    if (!c.grid) throw ConfigError("task 'evolve' needs a 'grid'");
    const System sys = e.system(a);
    const HilbertSpace& sp = sys.H.space();
    const auto sites = checked_layout(e, a, sp);
    const QState psi0 = initial_state(c, sites, sp);

    dynamics::Trajectory tr;
    if (!sys.channels.empty()) {
        if (sys.H_td) throw Error(ErrorKind::DomainError, "open-system evolution takes a static Hamiltonian");
        tr = dynamics::evolve_lindblad(LindbladModel{sys.H, sys.channels},
                                       QState::density(sp, psi0.density_matrix()), *c.grid);
    } else if (sys.H_td) {
        tr = dynamics::evolve_unitary(*sys.H_td, psi0, *c.grid);
    } else {
        tr = dynamics::evolve_unitary(sys.H, psi0, *c.grid);
    }

    TaskOutput out;
    out.table.add_column("t", tr.times);
    for (const auto& o : observables(sites, sp)) {
        std::vector<double> col;
        col.reserve(tr.states.size());
        for (const auto& s : tr.states) col.push_back(s.expect(o.op).real());
        out.table.add_column(o.name, std::move(col));
    }
    add_hygiene(out, tr.hygiene);
    return out;
}

TaskOutput spectrum(const Entry& e, const ExperimentConfig& c, const Args& a, std::size_t jobs)
{
    TaskOutput out;
    if (c.sweep) {
        dynamics::SweepSpec spec{c.sweep->parameter, c.sweep->values, c.sweep->levels};
        out.table = dynamics::eigen_sweep(
            spec,
            [&](double x) {
                Args b = a;
                b.numbers[spec.parameter] = x;
                return e.system(b).H;
            },
            jobs);
        return out;
    }
    const Operator H = e.system(a).H;
    H.require_hermitian("spectrum Hamiltonian");
    Eigen::SelfAdjointEigenSolver<Dense> es(H.dense());
    if (es.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceError, "eigendecomposition failed");
    const std::size_t k = std::min<std::size_t>(4, static_cast<std::size_t>(H.dim()));
    for (std::size_t j = 0; j < k; ++j) out.table.add_column("level_" + std::to_string(j), {es.eigenvalues()(static_cast<Eigen::Index>(j))});
    out.summary.push_back({"ground_energy", es.eigenvalues()(0)});
    if (k > 1) out.summary.push_back({"gap", es.eigenvalues()(1) - es.eigenvalues()(0)});
    return out;
}

TaskOutput steady(const Entry& e, const ExperimentConfig&, const Args& a)
{
    const System sys = e.system(a);
    if (sys.channels.empty()) throw Error(ErrorKind::DomainError, "steady state needs at least one dissipative channel");
    const LindbladModel m{sys.H, sys.channels};
    const QState rho = dynamics::steady_state(m);
    const auto sites = checked_layout(e, a, sys.H.space());
    TaskOutput out;
    for (const auto& o : observables(sites, sys.H.space())) out.table.add_column(o.name, {rho.expect(o.op).real()});
    const double res = dynamics::steady_state_residual(m, rho);
    out.table.add_column("residual", {res});
    out.summary.push_back({"residual", res});
    return out;
}

void keep_outputs(TaskOutput& out, const std::vector<std::string>& wanted)
{
    if (wanted.empty()) return;
    ResultTable t;
    t.errors = out.table.errors;
    t.metadata = out.table.metadata;
    for (const auto& w : wanted) {
        auto it = std::find(out.table.names.begin(), out.table.names.end(), w);
        if (it == out.table.names.end()) {
            std::string avail;
            for (const auto& n : out.table.names) avail += (avail.empty() ? "" : ", ") + n;
            throw ConfigError("unknown output '" + w + "'; available: " + avail);
        }
        t.add_column(w, out.table.columns[static_cast<std::size_t>(it - out.table.names.begin())]);
    }
    out.table = std::move(t);
}

} // namespace

TaskOutput run_task(const Entry& e, const ExperimentConfig& c, const Args& a, std::size_t jobs)
{
    if (std::find(e.tasks.begin(), e.tasks.end(), c.task) == e.tasks.end()) {
        throw ConfigError("model '" + e.name + "' does not support task '" + to_string(c.task) + "'");
    }
    TaskOutput out;
    switch (c.task) {
    case Task::Evolve: out = evolve(e, c, a); break;
    case Task::Spectrum: out = spectrum(e, c, a, jobs); break;
    case Task::SteadyState: out = steady(e, c, a); break;
    case Task::SchemeCheck:
    case Task::KerrVerify:
    case Task::AmplifyCheck: {
        CheckResult r = e.check(a, c.grid);
        out.table = std::move(r.table);
        out.summary = std::move(r.summary);
        break;
    }
    }
    out.table.validate();
    keep_outputs(out, c.outputs);
    return out;
}

Convergence convergence_check(const Entry& e, const ExperimentConfig& c, const Args& a, const TaskOutput& base)
{
    Convergence conv;
    conv.tolerance = c.convergence_tolerance;
    if (!c.convergence_check) return conv;
    Args doubled = a;
    for (const auto& m : e.modes) {
        if (m.fixed || !m.follows.empty() || m.kind != ModeKind::Boson) continue;
        conv.cutoffs[m.name] = a.cutoff(m.name);
        doubled.cutoffs[m.name] = 2 * a.cutoff(m.name);
        conv.doubled[m.name] = doubled.cutoffs[m.name];
    }
    if (conv.cutoffs.empty()) return conv;
    for (const auto& m : e.modes) {
        if (!m.follows.empty()) doubled.cutoffs[m.name] = doubled.cutoffs.at(m.follows);
    }
    conv.checked = true;

    const TaskOutput fine = run_task(e, c, doubled);
    const auto& x = base.table;
    const auto& y = fine.table;
    if (x.names != y.names || x.rows() != y.rows()) {
        conv.max_delta = std::numeric_limits<double>::infinity();
        return conv;
    }
    for (std::size_t k = 0; k < x.columns.size(); ++k) {
        for (std::size_t r = 0; r < x.rows(); ++r) {
            const double d = std::abs(x.columns[k][r] - y.columns[k][r]);
            conv.max_delta = std::max(conv.max_delta, std::isnan(d) ? std::numeric_limits<double>::infinity() : d);
        }
    }
    return conv;
}

} // namespace usc::cli
