#include "usc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

namespace usc::dynamics {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<cplx>;

constexpr std::size_t kMaxSteps = 20'000'000;
constexpr std::size_t kSuperoperatorLimit = 64;

Eigen::Map<Vec> as_vec(State& s) { return Eigen::Map<Vec>(s.data(), static_cast<Eigen::Index>(s.size())); }
Eigen::Map<const Vec> as_vec(const State& s)
{
    return Eigen::Map<const Vec>(s.data(), static_cast<Eigen::Index>(s.size()));
}

// Adaptive dopri5 from t to t_end. Repeated step rejection down to a
// vanishing step is reported as stiffness.
template <class System>
void integrate_interval(System& sys, State& x, double t, double t_end, double tol, double& dt)
{
    auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_dopri5<State>());
    const double span = t_end - t;
    if (dt <= 0.0 || dt > span) dt = span;
    std::size_t steps = 0;
    while (t < t_end) {
        double h = std::min(dt, t_end - t);
        const bool last = h == t_end - t;
        const double t_before = t;
        const auto res = stepper.try_step(sys, x, t, h);
        // try_step advances t on success and leaves the proposed next step in h
        dt = h;
        if (res == odeint::success) {
            if (last) t = t_end;
        } else {
            if (h < 1e-13 * std::max(1.0, std::abs(t_before))) {
                throw Error(ErrorKind::StiffnessError, "integrator step size underflow");
            }
        }
        if (++steps > kMaxSteps) throw Error(ErrorKind::StiffnessError, "integrator exceeded the step budget");
    }
}

double spectral_scale(const Operator& H)
{
    return std::max(H.max_abs(), std::numeric_limits<double>::min());
}

} // namespace

std::vector<double> TimeGrid::times() const
{
    validate();
    std::vector<double> out(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        out[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n_points - 1);
    }
    out.back() = t1;
    return out;
}

void TimeGrid::validate() const
{
    if (!(t1 > t0)) throw Error(ErrorKind::DomainError, "time grid needs t1 > t0");
    if (n_points < 2) throw Error(ErrorKind::DomainError, "time grid needs at least two points");
    if (!(tolerance > 0.0)) throw Error(ErrorKind::DomainError, "integrator tolerance must be positive");
}

Operator TimeDependentH::at(double t) const
{
    Operator h = static_part;
    for (const auto& term : terms) h += term.coeff(t) * term.op;
    return h;
}

Vec TimeDependentH::apply(double t, const Vec& psi) const
{
    Vec out = static_part.apply(psi);
    for (const auto& term : terms) {
        const cplx c = term.coeff(t);
        if (c != cplx(0.0, 0.0)) out += c * term.op.apply(psi);
    }
    return out;
}

Dense propagator(const Operator& H, double t)
{
    H.require_hermitian("Hamiltonian");
    return hilbert::expm_hermitian(H.dense(), cplx(0.0, -t));
}

Vec krylov_expv(const Operator& H, const Vec& psi, double t, double tol, int krylov_dim)
{
    if (psi.size() != H.dim()) throw Error(ErrorKind::ShapeError, "state length does not match Hamiltonian");
    const int m_max = std::max(2, std::min<int>(krylov_dim, static_cast<int>(H.dim())));
    const double scale = spectral_scale(H);
    Vec w = psi;
    double remaining = std::abs(t);
    const double sign = t < 0.0 ? -1.0 : 1.0;
    double h_try = remaining;
    while (remaining > 0.0) {
        const double beta = w.norm();
        if (beta == 0.0) return w;
        std::vector<Vec> V;
        std::vector<double> alpha;
        std::vector<double> offdiag;
        V.push_back(w / beta);
        bool breakdown = false;
        for (int j = 0; j < m_max; ++j) {
            Vec u = H.apply(V[j]);
            const double a = V[j].dot(u).real();
            alpha.push_back(a);
            // full reorthogonalization keeps the small basis well conditioned
            for (const auto& v : V) u -= v.dot(u) * v;
            for (const auto& v : V) u -= v.dot(u) * v;
            const double b = u.norm();
            if (b < 1e-13 * scale) {
                breakdown = true;
                break;
            }
            offdiag.push_back(b);
            if (j + 1 < m_max) V.push_back(u / b);
        }
        const auto k = static_cast<Eigen::Index>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            T(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        const Eigen::MatrixXd& Q = es.eigenvectors();
        const double b_last = breakdown ? 0.0 : offdiag.back();

        double h = std::min(h_try, remaining);
        Vec y;
        for (int attempt = 0;; ++attempt) {
            Vec ph(k);
            for (Eigen::Index i = 0; i < k; ++i) ph(i) = std::exp(cplx(0.0, -sign * h * es.eigenvalues()(i))) * Q(0, i);
            y = Q.cast<cplx>() * ph;
            const double err = beta * b_last * std::abs(y(k - 1));
            if (err <= tol * std::max(1.0, beta) || breakdown) break;
            if (attempt > 60) throw Error(ErrorKind::StiffnessError, "Krylov step size underflow");
            h *= 0.5;
        }
        Vec next = Vec::Zero(w.size());
        for (Eigen::Index i = 0; i < k; ++i) next += y(i) * V[static_cast<std::size_t>(i)];
        w = beta * next;
        remaining -= h;
        if (remaining < 1e-15 * std::abs(t)) remaining = 0.0;
        h_try = 1.5 * h;
    }
    return w;
}

Trajectory evolve_unitary(const Operator& H, const QState& psi0, const TimeGrid& grid)
{
    if (!psi0.is_ket()) throw Error(ErrorKind::ShapeError, "unitary evolution needs a ket");
    if (psi0.space() != H.space()) throw Error(ErrorKind::ShapeError, "initial state lives on a different space");
    H.require_hermitian("Hamiltonian");
    const auto times = grid.times();
    Trajectory out;
    out.times = times;

    const double e0 = psi0.expect(H).real();
    const double escale = std::max(std::abs(e0), spectral_scale(H));
    auto record = [&](Vec psi) {
        const double n = psi.norm();
        out.hygiene.norm_drift = std::max(out.hygiene.norm_drift, std::abs(n - 1.0));
        auto st = QState::normalized_ket(H.space(), std::move(psi));
        out.hygiene.energy_drift = std::max(out.hygiene.energy_drift, std::abs(st.expect(H).real() - e0) / escale);
        out.states.push_back(std::move(st));
    };

    if (!H.is_sparse()) {
        Eigen::SelfAdjointEigenSolver<Dense> es(H.dense());
        if (es.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceError, "eigendecomposition failed");
        const Dense& V = es.eigenvectors();
        const Vec c0 = V.adjoint() * psi0.vector();
        for (double t : times) {
            Vec c(c0.size());
            for (Eigen::Index k = 0; k < c.size(); ++k) {
                c(k) = std::exp(cplx(0.0, -(t - grid.t0) * es.eigenvalues()(k))) * c0(k);
            }
            record(V * c);
        }
        return out;
    }

    Vec psi = psi0.vector();
    record(psi);
    for (std::size_t k = 1; k < times.size(); ++k) {
        psi = krylov_expv(H, psi, times[k] - times[k - 1], grid.tolerance * 1e-2);
        record(psi);
    }
    return out;
}

Trajectory evolve_unitary(const TimeDependentH& H, const QState& psi0, const TimeGrid& grid)
{
    if (!psi0.is_ket()) throw Error(ErrorKind::ShapeError, "unitary evolution needs a ket");
    if (psi0.space() != H.space()) throw Error(ErrorKind::ShapeError, "initial state lives on a different space");
    H.static_part.require_hermitian("static Hamiltonian");
    for (const auto& term : H.terms) {
        if (term.op.space() != H.space()) throw Error(ErrorKind::ShapeError, "drive term lives on a different space");
    }
    const auto times = grid.times();
    Trajectory out;
    out.times = times;

    auto sys = [&H](const State& x, State& dxdt, double t) {
        const Vec r = cplx(0.0, -1.0) * H.apply(t, Vec(as_vec(x)));
        as_vec(dxdt) = r;
    };

    State x(psi0.vector().data(), psi0.vector().data() + psi0.vector().size());
    double dt = (times[1] - times[0]) / 8.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (k > 0) integrate_interval(sys, x, times[k - 1], times[k], grid.tolerance, dt);
        Vec psi = as_vec(x);
        out.hygiene.norm_drift = std::max(out.hygiene.norm_drift, std::abs(psi.norm() - 1.0));
        out.states.push_back(QState::normalized_ket(H.space(), std::move(psi)));
    }
    return out;
}

Trajectory evolve_lindblad(const LindbladModel& m, const QState& rho0, const TimeGrid& grid)
{
    if (rho0.is_ket()) throw Error(ErrorKind::ShapeError, "Lindblad evolution needs a density matrix");
    if (rho0.space() != m.space()) throw Error(ErrorKind::ShapeError, "initial state lives on a different space");
    m.validate();
    const auto times = grid.times();
    const Eigen::Index d = m.H.dim();
    Trajectory out;
    out.times = times;

    Sparse L;
    const bool superop = static_cast<std::size_t>(d) <= kSuperoperatorLimit;
    if (superop) L = liouvillian(m);

    auto sys = [&](const State& x, State& dxdt, double) {
        if (superop) {
            as_vec(dxdt) = L * as_vec(x);
        } else {
            Eigen::Map<const Dense> rho(x.data(), d, d);
            Eigen::Map<Dense>(dxdt.data(), d, d) = apply_lindblad(m, Dense(rho));
        }
    };

    const Dense& r0 = rho0.matrix();
    State x(r0.data(), r0.data() + r0.size());
    double dt = (times[1] - times[0]) / 8.0;
    double min_eig = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (k > 0) integrate_interval(sys, x, times[k - 1], times[k], grid.tolerance, dt);
        Eigen::Map<Dense> rho(x.data(), d, d);
        out.hygiene.trace_drift = std::max(out.hygiene.trace_drift, std::abs(rho.trace() - 1.0));
        out.hygiene.hermiticity = std::max(out.hygiene.hermiticity, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
        const Dense sym = 0.5 * (rho + rho.adjoint());
        rho = sym;
        Eigen::SelfAdjointEigenSolver<Dense> es(sym, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff();
        min_eig = std::min(min_eig, lo);
        if (lo < -1e-6) {
            throw Error(ErrorKind::PositivityViolationError,
                        "density matrix eigenvalue " + std::to_string(lo) + " at t = " + std::to_string(times[k]));
        }
        out.states.push_back(QState::density_unchecked(m.space(), sym));
    }
    out.hygiene.min_eigenvalue = min_eig;
    return out;
}

} // namespace usc::dynamics
